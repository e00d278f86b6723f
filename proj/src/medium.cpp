#include "backlund/medium.hpp"

#include "backlund/errors.hpp"

#include <cmath>
#include <sstream>

namespace backlund {

Medium Medium::make(double eps, double mu, double sigma) {
    Medium m{eps, mu, sigma};
    m.validate();
    return m;
}

void Medium::validate() const {
    if (!(eps > 0.0) || !std::isfinite(eps) || !(mu > 0.0) || !std::isfinite(mu) ||
        !(sigma >= 0.0) || !std::isfinite(sigma)) {
        std::ostringstream msg;
        msg << "invalid medium (eps=" << eps << ", mu=" << mu << ", sigma=" << sigma
            << "): need eps > 0, mu > 0, sigma >= 0";
        throw ParameterError(msg.str());
    }
}

double Medium::speed() const {
    return 1.0 / std::sqrt(eps * mu);
}

}  // namespace backlund
