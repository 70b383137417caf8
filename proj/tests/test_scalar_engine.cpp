#include "pvl/scalar_engine.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace pvl;
using pvl::testing::make_pair;
using pvl::testing::to_set;
using pvl::testing::true_pairs;

namespace {

Particle at(std::int64_t id, Vec3 pos, double h = 0.2, double mass = 1.0) { return {id, pos, h, mass}; }

} // namespace

TEST(Kernel, Values)
{
    const CubicFalloffKernel w;
    EXPECT_EQ(w(0.0), 1.0);
    EXPECT_EQ(w(0.5), 0.125);
    EXPECT_EQ(w(1.0), 0.0);
    EXPECT_EQ(w(3.0), 0.0);
    EXPECT_EQ(w(0.5f), 0.125f);
    for (double q = 0.0; q < 1.0; q += 0.01)
        EXPECT_GE(w(q), w(q + 0.01));
}

TEST(Interact, Examples)
{
    Particle pi = at(0, {0, 0, 0});
    interact(pi, at(1, {0, 0, 0}, 0.2, 2.0));
    EXPECT_EQ(pi.rho, 2.0);
    EXPECT_EQ(pi.wcount, 1.0);

    Particle pk = at(0, {0, 0, 0}, 0.2);
    interact(pk, at(1, {0.1, 0, 0}));
    EXPECT_DOUBLE_EQ(pk.rho, 0.125);

    Particle pf = at(0, {0, 0, 0}, 0.2);
    interact(pf, at(1, {0.2, 0, 0}));
    interact(pf, at(2, {0.5, 0, 0}));
    EXPECT_EQ(pf.rho, 0.0);
    EXPECT_EQ(pf.wcount, 0.0);
}

TEST(NaivePair, Empty)
{
    Cell a, b;
    EXPECT_EQ(naive_pair(a, b), PairStatistics{});
}

TEST(NaivePair, OneEach)
{
    Cell a, b;
    a.particles.push_back(at(0, {0.9, 0.5, 0.5}));
    b.particles.push_back(at(1, {1.0, 0.5, 0.5}));
    const auto s = naive_pair(a, b);
    // one candidate pair, counted once per direction
    EXPECT_EQ(s.inspected, 2u);
    EXPECT_EQ(s.in_range, 2u);
    EXPECT_NEAR(a.particles[0].rho, 0.125, 1e-12);
    EXPECT_NEAR(b.particles[0].rho, 0.125, 1e-12);
}

TEST(NaivePair, AsymmetricCutoff)
{
    Cell a, b;
    a.particles.push_back(at(0, {0.9, 0.5, 0.5}, 0.3));
    b.particles.push_back(at(1, {1.1, 0.5, 0.5}, 0.1));
    PairLog log;
    const auto s = naive_pair(a, b, CubicFalloffKernel{}, &log);
    EXPECT_EQ(s.in_range, 1u);
    ASSERT_EQ(log.size(), 1u);
    EXPECT_EQ(log[0], (std::pair<std::int64_t, std::int64_t>{0, 1}));
    EXPECT_EQ(b.particles[0].rho, 0.0);
}

TEST(NaiveSelf, OrderedPairs)
{
    Cell c;
    c.particles.push_back(at(0, {0.5, 0.5, 0.5}));
    const auto one = naive_self(c);
    EXPECT_EQ(one.inspected, 0u);
    EXPECT_EQ(c.particles[0].rho, 0.0);

    c.particles.push_back(at(1, {0.6, 0.5, 0.5}));
    c.particles.push_back(at(2, {0.9, 0.9, 0.9}));
    const auto s = naive_self(c);
    EXPECT_EQ(s.inspected, 6u);
    EXPECT_EQ(s.in_range, 2u);
}

TEST(PseudoVerletScalar, Empty)
{
    Cell a, b;
    const auto axis = make_direction({1, 0, 0}).axis;
    EXPECT_EQ(pseudo_verlet_scalar(a, b, sort_cell(a, axis), sort_cell(b, axis)), PairStatistics{});

    auto p = make_pair({1, 0, 0}, 10, 0, {}, 1);
    const auto s = pseudo_verlet_scalar(p.a, p.b, sort_cell(p.a, axis), sort_cell(p.b, axis));
    EXPECT_EQ(s.inspected, 0u);
}

TEST(PseudoVerletScalar, PairSetMatchesBruteForce)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        for (const auto& d : make_direction_set()) {
            auto p = make_pair(d.offset, 16, 16, {0.3, 0.5}, seed);
            const auto sp_a = sort_cell(p.a, d.axis);
            const auto sp_b = sort_cell(p.b, d.axis);
            PairLog log;
            pseudo_verlet_scalar(p.a, p.b, sp_a, sp_b, CubicFalloffKernel{}, &log);
            EXPECT_EQ(log.size(), to_set(log).size());
            EXPECT_EQ(to_set(log), true_pairs(p.a, p.b)) << "seed " << seed;
        }
    }
}

TEST(PseudoVerletScalar, MatchesNaive)
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (const auto& d : make_direction_set()) {
            auto pv = make_pair(d.offset, 64, 64, {0.2058, 0.3}, seed);
            auto nv = pv;
            PairLog log_pv, log_nv;
            const auto s_pv = pseudo_verlet_scalar(pv.a, pv.b, sort_cell(pv.a, d.axis), sort_cell(pv.b, d.axis),
                                                   CubicFalloffKernel{}, &log_pv);
            const auto s_nv = naive_pair(nv.a, nv.b, CubicFalloffKernel{}, &log_nv);

            EXPECT_EQ(to_set(log_pv), to_set(log_nv));
            EXPECT_EQ(s_pv.in_range, s_nv.in_range);
            EXPECT_LE(s_pv.inspected, s_nv.inspected);
            // same terms, possibly summed in another order
            for (std::size_t k = 0; k < pv.a.size(); ++k) {
                EXPECT_NEAR(pv.a.particles[k].rho, nv.a.particles[k].rho, 1e-12);
                EXPECT_NEAR(pv.a.particles[k].wcount, nv.a.particles[k].wcount, 1e-12);
            }
            for (std::size_t k = 0; k < pv.b.size(); ++k)
                EXPECT_NEAR(pv.b.particles[k].rho, nv.b.particles[k].rho, 1e-12);
        }
    }
}

TEST(PseudoVerletScalar, InspectsStrictlyFewerOnFacePairs)
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        for (std::size_t n : {16u, 64u, 216u}) {
            auto p = make_pair({1, 0, 0}, n, n, {}, seed);
            auto q = p;
            const auto pv = pseudo_verlet_scalar(p.a, p.b, sort_cell(p.a, p.dir.axis), sort_cell(p.b, p.dir.axis));
            const auto nv = naive_pair(q.a, q.b);
            EXPECT_LT(pv.inspected, nv.inspected);
        }
    }
}
