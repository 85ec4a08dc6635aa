#pragma once

#include <cmath>
#include <vector>

#include "domecast/catalog.hpp"

namespace domecast::testing {

// Mirrors CATALOG in oracles/gen_oracles.py.
inline Catalog shared_catalog() {
  struct Row {
    double t;
    bool completed;
    double silica;
  };
  const Row rows[] = {{0.12, true, 52}, {0.35, true, 55}, {0.5, true, 58}, {0.8, true, 60},
                      {1.1, true, 61},  {1.9, true, 63},  {2.4, true, 64}, {3.7, true, 66},
                      {6.2, true, 57},  {11.5, true, 68}, {4.0, false, 62}, {15.0, false, 70}};
  std::vector<EruptionRecord> records;
  int i = 0;
  for (const auto& r : rows) {
    EruptionRecord e;
    e.volcano_name = "V" + std::to_string(++i);
    e.start_year = 1900.0 + i;
    e.duration = r.t;
    e.censored = !r.completed;
    e.silica_pct = r.silica;
    e.composition = r.silica < 57 ? CompositionClass::Mafic
                    : r.silica < 64 ? CompositionClass::Intermediate
                                    : CompositionClass::Evolved;
    records.push_back(e);
  }
  return Catalog(records, "2015-03-15");
}

inline bool rel_close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

}  // namespace domecast::testing
