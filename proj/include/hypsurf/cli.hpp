#pragma once

#include <iosfwd>

#include <json.hpp>

#include "hypsurf/fuchsian.hpp"

namespace hypsurf {

/// Surface description that rebuilds the same group: builtin surfaces by
/// family and parameters, anything else by generator matrices.
nlohmann::ordered_json surface_to_json(const FuchsianGroup& group);
FuchsianGroup surface_from_json(const nlohmann::json& j, const GroupLimits& limits = {});

/// Entry point of the hypsurf command line. Returns 0 on success, 1 when a
/// verification fails or a computation raises a domain error, 2 on usage
/// errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypsurf
