#pragma once

#include <memory>
#include <string>

#include "dcluster/modules.hpp"
#include "dcluster/orbit.hpp"
#include "dcluster/quiver.hpp"

namespace testing_support {

inline std::shared_ptr<const dcluster::ModuleCategory> modules(const std::string& spec, std::uint32_t p = 101)
{
    return std::make_shared<const dcluster::ModuleCategory>(dcluster::parse_quiver(spec), p);
}

inline dcluster::OrbitCategory orbit(const std::string& spec, int d, std::uint32_t p = 101)
{
    return dcluster::OrbitCategory(modules(spec, p), d);
}

// Canonical index of M[k] given the dimension vector of M.
inline int obj(const dcluster::OrbitCategory& c, const dcluster::Root& dims, int k)
{
    return c.index_of({c.modules().id_of(dims), k});
}

} // namespace testing_support
