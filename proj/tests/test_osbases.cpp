#include "doctest.h"
#include "kron/osbases.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace kron;

namespace {

std::set<std::vector<int>> index_sets(const std::vector<OSBasis>& v)
{
    std::set<std::vector<int>> s;
    for (auto& b : v) s.insert(b.indices);
    return s;
}

const std::vector<IVec> E3{{1, 0}, {0, 1}, {1, 1}};

}  // namespace

TEST_CASE("three lines in the plane")
{
    OSEnumerator e(E3);
    CHECK(index_sets(e.all()) == std::set<std::vector<int>>{{0, 1}, {0, 2}});
    RVec xi{frac(1, 3), Rat(1)};
    CHECK(index_sets(e.adapted(xi)) == std::set<std::vector<int>>{{0, 1}});
    // the other tope containing (1, 1/3)
    CHECK(index_sets(e.adapted({Rat(1), frac(1, 3)})) == std::set<std::vector<int>>{{0, 1}, {0, 2}});
    CHECK_THROWS_AS(e.adapted({Rat(1), Rat(1)}), std::domain_error);
    CHECK_THROWS_AS(e.adapted({Rat(1), Rat(0)}), std::domain_error);
}

TEST_CASE("single basis")
{
    std::vector<IVec> b{{1, 0, 0}, {1, 1, 0}, {0, 1, 2}};
    auto got = os_bases_adapted(b, {Rat(2), Rat(2), Rat(1)});
    REQUIRE(got.size() == 1);
    CHECK(got[0].indices == std::vector<int>{0, 1, 2});
    CHECK(got[0].det == 2);
    CHECK(os_bases_adapted({{1, 0}, {2, 0}}, {Rat(1), Rat(1)}).empty());
}

TEST_CASE("cone membership")
{
    RVec c;
    CHECK(cone_membership({{1, 0}, {0, 1}}, {Rat(1), Rat(2)}, &c));
    CHECK(c == RVec{Rat(1), Rat(2)});
    CHECK_FALSE(cone_membership({{1, 0}, {0, 1}}, {Rat(1), Rat(-2)}));
    CHECK_FALSE(cone_membership({{1, 0}, {1, 1}}, {frac(1, 3), Rat(1)}, &c));
    CHECK(c == RVec{frac(-2, 3), Rat(1)});
}

TEST_CASE("enumeration equals the definitional oracle")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> coord(-2, 2);
    int checked = 0;
    for (int it = 0; it < 300; ++it) {
        int r = 1 + it % 4;
        int n = r + (int)(rng() % (9 - r));
        std::vector<IVec> psi;
        while ((int)psi.size() < n) {
            IVec v(r);
            bool nz = false;
            for (auto& x : v) {
                x = coord(rng);
                nz = nz || x;
            }
            if (!nz) continue;
            // duplicates allowed on purpose
            if (!psi.empty() && rng() % 6 == 0) v = psi[rng() % psi.size()];
            psi.push_back(v);
        }
        RVec xi(r);
        for (auto& x : xi) x = frac((long)(rng() % 2001) - 1000, 997);
        OSEnumerator e(psi);
        auto brute = os_bases_bruteforce(psi, &xi);
        std::vector<OSBasis> fast;
        try {
            fast = e.adapted(xi);
        } catch (const std::domain_error&) {
            continue;  // landed on a wall; skip
        }
        CHECK(index_sets(fast) == index_sets(brute));
        CHECK(index_sets(e.all()) == index_sets(os_bases_bruteforce(psi, nullptr)));
        for (auto& b : fast) {
            auto it2 = std::find_if(brute.begin(), brute.end(), [&](auto& x) { return x.indices == b.indices; });
            if (it2 != brute.end()) CHECK(it2->det == b.det);
        }
        ++checked;
    }
    CHECK(checked > 250);
}
