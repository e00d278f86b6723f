#pragma once

namespace backlund {

/// Linear, homogeneous, isotropic medium. Units are the caller's choice
/// (SI or normalized); the library embeds no physical constants.
struct Medium {
    double eps = 1.0;    ///< permittivity
    double mu = 1.0;     ///< permeability
    double sigma = 0.0;  ///< conductivity

    /// Validating factory: eps > 0, mu > 0, sigma >= 0, all finite.
    static Medium make(double eps, double mu, double sigma = 0.0);

    /// eps = mu = 1, sigma = 0 (c = 1).
    static Medium normalized() { return {}; }

    void validate() const;

    /// 1 / sqrt(eps mu)
    double speed() const;

    bool conducting() const { return sigma != 0.0; }
};

}  // namespace backlund
