#pragma once

namespace gseries {

/// Principal branch W0 of the Lambert W function: the w >= -1 solving
/// w e^w = x, for x >= -1/e.
///
/// Arguments up to a few ulp below -1/e are treated as the branch point and
/// return -1; anything further below throws DomainError.
double lambert_w0(double x);

}  // namespace gseries
