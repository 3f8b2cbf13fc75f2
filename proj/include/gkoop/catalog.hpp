// Built-in system catalog. Each entry is the exact config text that also
// ships under configs/, plus the suite expectations (which commands run on
// it and whether the check is expected to come out positive or negative).
#pragma once

#include <string>
#include <vector>

namespace gkoop {

struct CheckSpec {
  std::string command;  // verify | rescale | lift-check | residual
  bool expect_pass;
};

struct CatalogEntry {
  std::string name;
  std::string config_text;
  std::vector<CheckSpec> checks;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

}  // namespace gkoop
