#include "softcore/model.hpp"

#include <cmath>

#include "softcore/errors.hpp"

namespace softcore {

void SoftCorePotential::validate() const {
  if (!std::isfinite(height)) throw DomainError("potential height must be finite");
  if (!(range > 0.0) || !std::isfinite(range)) throw DomainError("potential range must be positive");
}

void AngularChannel::validate() const {
  if (l < 0) throw DomainError("angular momentum l must be non-negative");
}

std::string to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parse_parity(const std::string& s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw DomainError("parity must be 'even' or 'odd', got '" + s + "'");
}

}  // namespace softcore
