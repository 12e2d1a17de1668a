#include "enomr/scheme.hpp"

#include <stdexcept>

namespace enomr {

Scheme Scheme::eno_mr(int order) {
  if (order != 5 && order != 9 && order != 13 && order != 17) {
    throw std::invalid_argument("ENO-MR order must be 5, 9, 13 or 17");
  }
  return Scheme{SchemeKind::EnoMr, (order + 1) / 2, {}};
}

Scheme Scheme::weno_ao53(WenoParams params) { return Scheme{SchemeKind::WenoAo53, 3, params}; }

Scheme Scheme::weno_ao953(WenoParams params) { return Scheme{SchemeKind::WenoAo953, 5, params}; }

Scheme Scheme::parse(std::string_view name) {
  if (name == "eno-mr5") return eno_mr(5);
  if (name == "eno-mr9") return eno_mr(9);
  if (name == "eno-mr13") return eno_mr(13);
  if (name == "eno-mr17") return eno_mr(17);
  if (name == "weno-ao53") return weno_ao53();
  if (name == "weno-ao953") return weno_ao953();
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected eno-mr5|eno-mr9|eno-mr13|eno-mr17|weno-ao53|weno-ao953)");
}

std::string Scheme::name() const {
  switch (kind) {
    case SchemeKind::EnoMr:
      return "eno-mr" + std::to_string(order());
    case SchemeKind::WenoAo53:
      return "weno-ao53";
    case SchemeKind::WenoAo953:
      return "weno-ao953";
  }
  return "unknown";
}

}  // namespace enomr
