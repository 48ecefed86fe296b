#ifndef OPENPATH_LASOTA_HPP
#define OPENPATH_LASOTA_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "openpath/path.hpp"

namespace openpath {

/// A finite category given by its composition table. Objects and morphisms
/// are referred to by index.
struct FiniteCategory {
    struct Morphism {
        std::string name;
        int dom = 0;
        int cod = 0;
    };

    std::vector<std::string> objects;
    std::vector<Morphism> morphisms;
    std::vector<int> identities;              // per object
    std::map<std::pair<int, int>, int> comp;  // (g, f) -> g o f
    int initial = 0;

    int object_index(const std::string& name) const;
    int morphism_index(const std::string& name) const;
    /// Morphisms P -> Q in table order.
    std::vector<int> hom(int p, int q) const;
};

/// First violation of the category laws, or nullopt. Initiality of the
/// distinguished object is not checked.
std::optional<std::string> category_violation(const FiniteCategory& P);
void validate_category(const FiniteCategory& P);

/// Sort P: the coproduct over Q with P(P, Q) nonempty of P(P, Q) x X_Q.
Functor lasota_functor(const FiniteCategory& P);

/// One element "*" in the sort of the initial object, none elsewhere.
SortedSet lasota_pointing(const FiniteCategory& P);

/// The family with one element in sort q.
SortedSet characteristic(const FiniteCategory& P, int q, const std::string& name = "*");

struct LasotaReport {
    std::vector<std::size_t> paths;      // per length 0..n
    std::vector<std::size_t> sequences;  // composable sequences from the initial object
    std::size_t precise_maps_checked = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return mismatches.empty(); }
};

/// (1) Paths of Path(I, F) up to length n, built with enumerate_precise_maps,
/// are matched one-to-one with composable sequences 0 -> P_1 -> ... -> P_n.
/// (2) Every map out of a characteristic family into F(Y), |Y_Q| <= max_y
/// per sort, is precise iff Y is characteristic.
LasotaReport paths_bijection_check(const FiniteCategory& P, int n, int max_y = 2);

/// The morphism sequence m_1, ..., m_n of a path whose levels are
/// characteristic. Throws otherwise.
std::vector<int> path_sequence(const FiniteCategory& P, const PathObj& p);

}  // namespace openpath

#endif  // OPENPATH_LASOTA_HPP
