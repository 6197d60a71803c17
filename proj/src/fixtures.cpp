// SPDX-License-Identifier: MIT
#include "fixtures.hpp"

namespace psk {

std::vector<std::string> fixture_names() {
    return {"triv-A2", "triv-A3", "scalar-twist-2chain", "scalar-twist-3chain", "scalar-twist-3chain-bad",
            "rank2-fiber"};
}

BaseCategory chain_poset(int n) {
    BaseCategory B;
    for (int i = 0; i < n; ++i) B.add_object(std::to_string(i));
    std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
        arrow[i][i] = B.add_arrow("1_" + std::to_string(i), i, i);
        B.set_identity(i, arrow[i][i]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) arrow[i][j] = B.add_arrow("a" + std::to_string(i) + std::to_string(j), i, j);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) B.set_compose(arrow[i][j], arrow[j][k], arrow[i][k]);
    return B;
}

BaseCategory square_poset() {
    BaseCategory B;
    for (int i = 0; i < 4; ++i) B.add_object(std::to_string(i));
    int id[4];
    for (int i = 0; i < 4; ++i) {
        id[i] = B.add_arrow("1_" + std::to_string(i), i, i);
        B.set_identity(i, id[i]);
    }
    int a01 = B.add_arrow("a01", 0, 1), a02 = B.add_arrow("a02", 0, 2);
    int a13 = B.add_arrow("a13", 1, 3), a23 = B.add_arrow("a23", 2, 3);
    int a03 = B.add_arrow("a03", 0, 3);
    for (int a = 0; a < B.num_arrows(); ++a) {
        B.set_compose(id[B.src(a)], a, a);
        B.set_compose(a, id[B.tgt(a)], a);
    }
    B.set_compose(a01, a13, a03);
    B.set_compose(a02, a23, a03);
    return B;
}

}  // namespace psk
