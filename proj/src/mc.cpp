#include "randbound/mc.hpp"

#include "randbound/rng.hpp"

namespace randbound {

double z_critical(double level) { return norm_quantile(0.5 + level / 2.0); }

} // namespace randbound
