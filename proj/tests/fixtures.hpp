#pragma once

#include <string>
#include <vector>

#include "cdend/tree.hpp"

namespace cdend::fixtures {

inline std::vector<int> idx(const std::vector<std::string>& all, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names)
        for (int i = 0; i < static_cast<int>(all.size()); ++i)
            if (all[i] == n) out.push_back(i);
    return out;
}

// u:(c,b,a), v:(c,d,e,f), w:(d); legs f, b, e, a.
inline TreePtr three_vertex_tree() {
    std::vector<std::string> e{"a", "b", "c", "d", "e", "f"};
    return share(make_tree(e, {"u", "v", "w"}, {idx(e, {"c", "b", "a"}), idx(e, {"c", "d", "e", "f"}), idx(e, {"d"})},
                           idx(e, {"f", "b", "e", "a"})));
}

// u:(a,b,c), v:(c,e,f,d), w:(d); legs a, b, e, f.
inline TreePtr univalent_end_tree() {
    std::vector<std::string> e{"a", "b", "c", "d", "e", "f"};
    return share(make_tree(e, {"u", "v", "w"}, {idx(e, {"a", "b", "c"}), idx(e, {"c", "e", "f", "d"}), idx(e, {"d"})},
                           idx(e, {"a", "b", "e", "f"})));
}

// u:(c,1,3), v:(c,0,2); legs 0, 1, 2, 3.
inline TreePtr two_vertex_four_leg_tree() {
    std::vector<std::string> e{"0", "1", "2", "3", "c"};
    return share(make_tree(e, {"u", "v"}, {idx(e, {"c", "1", "3"}), idx(e, {"c", "0", "2"})},
                           idx(e, {"0", "1", "2", "3"})));
}

inline TreePtr L(int n) { return share(linear(n)); }
inline TreePtr corolla(int n) { return share(star(n)); }
inline TreePtr unit_tree() { return share(eta()); }

inline std::vector<TreePtr> shared_trees(int max_vertices, int max_legs) {
    std::vector<TreePtr> out;
    for (auto& t : trees_up_to(max_vertices, max_legs)) out.push_back(share(std::move(t)));
    return out;
}

} // namespace cdend::fixtures
