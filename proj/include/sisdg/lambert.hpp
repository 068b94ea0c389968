#pragma once

namespace sisdg {

/// Principal real branch of the Lambert W function: returns w >= -1 with
/// w e^w = z. Defined for z >= -1/e; throws std::domain_error below that.
/// Residual |w e^w - z| stays within 1e-13 * max(1, |z|).
double lambert_w0(double z);

/// W(e^log_z) for the positive branch, usable when e^log_z itself would
/// overflow: solves w + ln w = log_z directly once the argument is large.
double lambert_w0_log(double log_z);

}  // namespace sisdg
