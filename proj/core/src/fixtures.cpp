#include <abmetric/config.hpp>

#include <array>
#include <utility>

namespace abm {

namespace {

// Bundled catalog. Every entry goes through the same parser as user files.
constexpr std::array<std::pair<const char*, const char*>, 17> kCatalog{{
    {"riemannian2", R"(
[fixture]
name = riemannian2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.3, 0
[phi]
family = riemannian
[probe]
points = 0.3, 0.7
)"},
    {"randers-parallel2", R"(
[fixture]
name = randers-parallel2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.5, 0
[phi]
family = randers
[probe]
points = 0.3, 0.7
)"},
    {"power1-parallel2", R"(
[fixture]
name = power1-parallel2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.5, 0
[phi]
family = power
m = 1
[probe]
points = 0.3, 0.7
)"},
    {"power2-parallel2", R"(
[fixture]
name = power2-parallel2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.3, 0.15
[phi]
family = power
m = 2
[probe]
points = 0.3, 0.7
)"},
    {"quadratic-parallel2", R"(
[fixture]
name = quadratic-parallel2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = constant
vector = 0.5, 0
[phi]
family = quadratic
[probe]
points = 0.3, 0.7
)"},
    {"randers-linear2", R"(
[fixture]
name = randers-linear2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0; 0, 0.3
[phi]
family = randers
[probe]
points = 0.5, 0.6; 0.4, -0.3
)"},
    {"randers-linear3", R"(
[fixture]
name = randers-linear3
dimension = 3
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0, 0; 0, 0.3, 0; 0, 0, 0.3
[phi]
family = randers
[probe]
points = 0.4, 0.5, 0.3; 0.3, -0.4, 0.2
)"},
    {"power1-linear2", R"(
[fixture]
name = power1-linear2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0; 0, 0.3
[phi]
family = power
m = 1
[probe]
points = 0.5, 0.6; 0.4, -0.3
)"},
    {"power1-linear3", R"(
[fixture]
name = power1-linear3
dimension = 3
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0, 0; 0, 0.3, 0; 0, 0, 0.3
[phi]
family = power
m = 1
[probe]
points = 0.4, 0.5, 0.3; 0.3, -0.4, 0.2
)"},
    {"power2-linear2", R"(
[fixture]
name = power2-linear2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0; 0, 0.3
[phi]
family = power
m = 2
[probe]
points = 0.5, 0.6
)"},
    {"quadratic-linear2", R"(
[fixture]
name = quadratic-linear2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0; 0, 0.3
[phi]
family = quadratic
[probe]
points = 0.5, 0.6; 0.4, -0.3
)"},
    {"quadratic-linear3", R"(
[fixture]
name = quadratic-linear3
dimension = 3
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0, 0; 0, 0.3, 0; 0, 0, 0.3
[phi]
family = quadratic
[probe]
points = 0.4, 0.5, 0.3; 0.3, -0.4, 0.2
)"},
    {"randers-type2", R"(
[fixture]
name = randers-type2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0.3, 0; 0, 0.3
[phi]
family = randers_type
k1 = 2
k2 = 0.5
k3 = -1
[probe]
points = 0.5, 0.6
)"},
    {"funk2", R"(
[fixture]
name = funk2
dimension = 2
[alpha]
kind = funk_ball
[beta]
kind = funk_ball
[phi]
family = randers
[probe]
points = 0.2, 0.1
)"},
    {"funk3", R"(
[fixture]
name = funk3
dimension = 3
[alpha]
kind = funk_ball
[beta]
kind = funk_ball
[phi]
family = randers
[probe]
points = 0.2, 0.1, 0.1
)"},
    {"skew2", R"(
[fixture]
name = skew2
dimension = 2
[alpha]
kind = euclidean
[beta]
kind = linear
matrix = 0, 0; 1, 0
[phi]
family = randers
[probe]
points = 0.3, 0.7
)"},
    {"conformal-randers2", R"(
[fixture]
name = conformal-randers2
dimension = 2
[alpha]
kind = conformal
factor = exp(2*x1)
[beta]
kind = constant
vector = 0.2, 0.1
[phi]
family = randers
[probe]
points = 0.3, 0.7
)"},
}};

}  // namespace

std::vector<std::string> builtin_fixture_names() {
    std::vector<std::string> names;
    names.reserve(kCatalog.size());
    for (const auto& [name, text] : kCatalog) names.emplace_back(name);
    return names;
}

std::string builtin_fixture_text(const std::string& name) {
    for (const auto& [nm, text] : kCatalog)
        if (name == nm) return text;
    throw ValidationError("config", "no builtin fixture named '" + name + "'");
}

}  // namespace abm
