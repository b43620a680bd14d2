#pragma once

#include <string>

#include <json.hpp>

#include "vexlab/convergence_lab.hpp"
#include "vexlab/denoiser.hpp"
#include "vexlab/exponent_field.hpp"
#include "vexlab/grid_domain.hpp"
#include "vexlab/kernel_family.hpp"

namespace vexlab {

using Json = nlohmann::json;

Json load_json_file(const std::string& path);

/// {"lower":0,"upper":1,"resolution":1024} or 2D with arrays.
BoxDomain parse_box(const Json& j);

/// {"kind":"constant","value":c} | {"kind":"ramp","from":p0,"to":p1,"axis":k}
/// | {"kind":"step","low":p0,"high":p1,"edges":[x0,x1]}
/// | {"kind":"bump","base":p0,"amplitude":dp,"center":c,"width":w}
/// | {"kind":"grid","path":csv}
ExponentField parse_exponent_field(const Json& j, int n);

/// {"kind":"model","a":const-or-descriptor} (a omitted = largest admissible)
/// | {"kind":"indicator"} | {"kind":"majorant","a":..,"b":..}
KernelProfile parse_kernel(const Json& j, const ExponentField& p, int n, const BoxDomain& box);

/// {"kind":"sine","freq":1} | {"kind":"constant","value":c}
/// | {"kind":"affine","slope":s,"offset":o} | {"kind":"bump",...}
/// | {"kind":"tent",...} | {"kind":"smooth_tent",...} | {"kind":"power_tail",...}
/// | {"kind":"grid","path":csv}
GridFunction parse_grid_function(const Json& j, const BoxDomain& box);

/// Compact single-line echo of a config object for CSV provenance headers.
std::string config_echo(const Json& j);

}  // namespace vexlab
