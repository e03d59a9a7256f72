#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "sumopt/minnorm.hpp"
#include "sumopt/problems.hpp"

using namespace sumopt;

TEST_CASE("planar objective spot values") {
    CHECK(crescent({0.0, 0.0}) == 0.0);
    CHECK(crescent({-0.6, 0.2}) == Catch::Approx(0.2).margin(1e-15));
    CHECK(lq({-0.6, 0.2}) == Catch::Approx(0.4).margin(1e-15));
    CHECK(lq({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) ==
          Catch::Approx(-std::sqrt(2.0)).margin(1e-15));
    CHECK(ql({1.2, 2.4}) == Catch::Approx(7.2).margin(1e-14));
    CHECK(ql({0.0, 0.0}) == 60.0);  // third piece dominates at the origin
    CHECK(cb3({1.0, 1.0}) == Catch::Approx(2.0).margin(1e-15));
    CHECK(cb3({0.0, 0.0}) == 8.0);
    CHECK(dem({0.0, -3.0}) == -3.0);
    CHECK(dem({0.0, 0.0}) == 0.0);
    CHECK(mifflin1({1.0, 0.0}) == -1.0);
    CHECK(mifflin1({0.0, 0.0}) == 0.0);
    CHECK(mifflin2({1.0, 0.0}) == -1.0);
    CHECK(mifflin2({0.0, 0.0}) == -0.25);
}

TEST_CASE("tied pieces resolve to the lowest index") {
    // At the pinned start both crescent pieces are mathematically equal but a
    // last-bit apart in floating point; the tolerance keeps piece one.
    const Vector g = crescent_subgrad({-0.6, 0.2});
    REQUIRE(g.size() == 2);
    CHECK(g[0] == Catch::Approx(-1.2).margin(1e-15));
    CHECK(g[1] == Catch::Approx(-0.6).margin(1e-15));

    MaxTypeObjective cre = zoo::crescent();
    CHECK(cre.active_gradients({-0.6, 0.2}, 1e-9).size() == 2);
    CHECK(cre.activity_margin({-0.6, 0.2}) < 1e-15);
    CHECK(cre.activity_margin({0.0, 5.0}) > 1.0);
}

TEST_CASE("free wrappers agree with the structured objectives") {
    const Vector x{0.3, -1.7};
    CHECK(ql(x) == zoo::ql().value(x));
    CHECK(ql_subgrad(x) == zoo::ql().subgrad(x));
    CHECK(mifflin2(x) == zoo::mifflin2().value(x));
    CHECK(mifflin2_subgrad(x) == zoo::mifflin2().subgrad(x));
    CHECK(dem(x) == zoo::dem().value(x));
    CHECK(cb3(x) == zoo::cb3().value(x));
    CHECK(lq(x) == zoo::lq().value(x));
    CHECK(crescent(x) == zoo::crescent().value(x));
    CHECK(mifflin1(x) == zoo::mifflin1().value(x));
}

TEST_CASE("reported subgradients are first-order valid") {
    // f(x + h u) >= p_a(x) + h grad(p_a).u - C h^2 for the reported active
    // piece p_a; the curvature constant covers the stiffest piece on the box.
    detail::Rng rng(4711);
    const double h = 1e-3, C = 2000.0;
    for (const auto& obj : zoo::planar()) {
        for (int rep = 0; rep < 1000; ++rep) {
            const Vector x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
            const double fx = obj.value(x);
            const Vector g = obj.subgrad(x);
            for (int k = 0; k < 4; ++k) {
                const double a = rng.uniform(0.0, 6.283185307179586);
                const Vector u{std::cos(a), std::sin(a)};
                const double fy = obj.value({x[0] + h * u[0], x[1] + h * u[1]});
                const double lin = fx + h * (g[0] * u[0] + g[1] * u[1]);
                REQUIRE(fy >= lin - C * h * h - 1e-11);
            }
        }
    }
}

TEST_CASE("reported subgradients match central differences off the kinks") {
    detail::Rng rng(9090);
    const double h = 1e-6;
    for (const auto& obj : zoo::planar()) {
        int tested = 0;
        for (int rep = 0; rep < 2000 && tested < 300; ++rep) {
            const Vector x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
            if (obj.activity_margin(x) < 1e-2) continue;
            ++tested;
            const Vector g = obj.subgrad(x);
            for (int k = 0; k < 2; ++k) {
                const double a = rng.uniform(0.0, 6.283185307179586);
                const Vector u{std::cos(a), std::sin(a)};
                const double fp = obj.value({x[0] + h * u[0], x[1] + h * u[1]});
                const double fm = obj.value({x[0] - h * u[0], x[1] - h * u[1]});
                const double cd = (fp - fm) / (2.0 * h);
                REQUIRE(std::fabs(cd - (g[0] * u[0] + g[1] * u[1])) <= 1e-4);
            }
        }
        REQUIRE(tested >= 100);
    }
}

TEST_CASE("known minimizers carry a zero in the active-gradient hull") {
    const std::vector<std::pair<MaxTypeObjective, Vector>> cases = {
        {zoo::crescent(), {0.0, 0.0}},
        {zoo::lq(), {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}},
        {zoo::ql(), {1.2, 2.4}},
        {zoo::cb3(), {1.0, 1.0}},
        {zoo::dem(), {0.0, -3.0}},
        {zoo::mifflin1(), {1.0, 0.0}},
        {zoo::mifflin2(), {1.0, 0.0}},
    };
    for (const auto& [obj, xstar] : cases) {
        INFO(obj.name);
        const auto gens = obj.active_gradients(xstar, 1e-9);
        REQUIRE(gens.size() >= 2);
        const auto mn = min_norm_point(GeneratorSet::from_vectors(gens));
        CHECK(mn.norm <= 1e-8);
    }
}

TEST_CASE("composite line-ups") {
    CHECK(composite_table().size() == 15);

    Problem p1 = composite_problem(1);
    CHECK(p1.name() == "P1");
    CHECK(p1.dim() == 2);
    REQUIRE(p1.num_objectives() == 2);
    CHECK(p1.objective(0).name() == "Crescent");
    CHECK(p1.objective(1).name() == "LQ");

    Problem p11 = composite_problem(11);
    REQUIRE(p11.num_objectives() == 3);
    CHECK(p11.objective(0).name() == "DEM");
    CHECK(p11.objective(1).name() == "QL");
    CHECK(p11.objective(2).name() == "Mifflin1");

    Problem p15 = composite_problem(15);
    REQUIRE(p15.num_objectives() == 5);
    CHECK(p15.objective(0).name() == "Mifflin2");
    CHECK(p15.objective(1).name() == "Crescent");
    CHECK(p15.objective(2).name() == "DEM");
    CHECK(p15.objective(3).name() == "Mifflin1");
    CHECK(p15.objective(4).name() == "QL");

    // composite oracles defer to the planar definitions
    const Vector x{0.4, -0.9};
    CHECK(p1.objective(0).value(x) == crescent(x));
    CHECK(p1.objective(1).subgrad(x) == lq_subgrad(x));

    CHECK_THROWS_AS(composite_problem(0), ConfigError);
    CHECK_THROWS_AS(composite_problem(16), ConfigError);
}

TEST_CASE("periodic curve values and derivatives") {
    CHECK(fl_f1(0.0) == Catch::Approx(std::cos(0.6)).margin(1e-15));
    CHECK(fl_f2(0.0) == Catch::Approx(-std::sin(0.6)).margin(1e-15));

    detail::Rng rng(606);
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < 100; ++i) {
        const double x = rng.uniform(0.0, two_pi);
        CHECK(std::fabs(fl_f1(x + two_pi) - fl_f1(x)) <= 1e-12);
        CHECK(std::fabs(fl_f2(x + two_pi) - fl_f2(x)) <= 1e-12);
    }
    // analytic derivatives vs central differences
    const double h = 1e-6;
    for (int i = 0; i < 50; ++i) {
        const double x = rng.uniform(-two_pi, two_pi);
        const double cd1 = (fl_f1(x + h) - fl_f1(x - h)) / (2.0 * h);
        const double cd2 = (fl_f2(x + h) - fl_f2(x - h)) / (2.0 * h);
        CHECK(std::fabs(cd1 - fl_f1_prime(x)) <= 1e-6);
        CHECK(std::fabs(cd2 - fl_f2_prime(x)) <= 1e-6);
        CHECK(fl_substationarity_indicator(x) ==
              Catch::Approx(fl_f1_prime(x) * fl_f2_prime(x)));
    }

    Problem fl = fl_problem();
    CHECK(fl.dim() == 1);
    CHECK(fl.num_objectives() == 2);
    CHECK(fl.objective(0).value({0.0}) == fl_f1(0.0));
    CHECK(fl.objective(1).subgrad({1.0}) == Vector{fl_f2_prime(1.0)});
}

TEST_CASE("sparse instance is a pure function of the seed") {
    const auto a = make_sparse_instance(7);
    const auto b = make_sparse_instance(7);
    const auto c = make_sparse_instance(8);
    CHECK(a.rows == 50);
    CHECK(a.cols == 100);
    CHECK(a.A.size() == 5000);
    CHECK(a.b.size() == 50);
    CHECK(a.A == b.A);
    CHECK(a.b == b.b);
    CHECK(a.A != c.A);

    // the matrix consumes the stream first, row-major, then the offsets
    detail::Rng rng(7);
    for (std::size_t i = 0; i < a.A.size(); ++i) REQUIRE(a.A[i] == rng.normal());
    for (std::size_t i = 0; i < a.b.size(); ++i) REQUIRE(a.b[i] == rng.normal());

    CHECK_THROWS_AS(make_sparse_instance(1, 0, 5), ConfigError);
}

TEST_CASE("sparse objectives") {
    const auto inst = make_sparse_instance(3, 4, 6);
    Problem prob = sparse_problem(inst);
    CHECK(prob.dim() == 6);
    CHECK(prob.num_objectives() == 2);

    const Vector zero(6, 0.0);
    CHECK(prob.objective(0).value(zero) == 0.0);
    CHECK(prob.objective(0).subgrad(zero) == Vector(6, 0.0));
    CHECK(prob.objective(1).value(zero) == Catch::Approx(detail::norm2(inst.b)));

    const Vector g0 = prob.objective(1).subgrad(zero);  // -2 A^T b
    for (int j = 0; j < 6; ++j) {
        double expect = 0.0;
        for (int i = 0; i < 4; ++i) expect += -2.0 * inst.A[static_cast<std::size_t>(i * 6 + j)] *
                                              inst.b[static_cast<std::size_t>(i)];
        CHECK(g0[static_cast<std::size_t>(j)] == Catch::Approx(expect).margin(1e-12));
    }

    const Vector x{1.5, -2.0, 0.0, 0.5, -0.25, 3.0};
    CHECK(prob.objective(0).value(x) == Catch::Approx(7.25));
    CHECK(prob.objective(0).subgrad(x) == Vector{1.0, -1.0, 0.0, 1.0, -1.0, 1.0});

    // quadratic residual matches a direct evaluation
    double direct = 0.0;
    for (int i = 0; i < 4; ++i) {
        double s = -inst.b[static_cast<std::size_t>(i)];
        for (int j = 0; j < 6; ++j) s += inst.A[static_cast<std::size_t>(i * 6 + j)] *
                                         x[static_cast<std::size_t>(j)];
        direct += s * s;
    }
    CHECK(prob.objective(1).value(x) == Catch::Approx(direct).margin(1e-12));
}

TEST_CASE("zero counting uses a strict threshold") {
    CHECK(count_zero({0.0005, -0.002, 0.0}) == 2);
    CHECK(count_zero({0.001}) == 0);  // boundary excluded
    CHECK(count_zero({-0.000999}) == 1);
    CHECK(count_zero({}, 1e-3) == 0);
    CHECK(count_zero({5.0, -5.0, 0.1}, 1.0) == 1);
}

TEST_CASE("problem registry") {
    CHECK(make_problem("P1").name() == "P1");
    CHECK(make_problem("P15").num_objectives() == 5);
    CHECK(make_problem("FL").dim() == 1);

    Problem sp = make_problem("SPARSE:42");
    CHECK(sp.dim() == 100);
    CHECK(sp.num_objectives() == 2);
    // same seed, same data
    const auto inst = make_sparse_instance(42);
    CHECK(sp.objective(1).value(Vector(100, 0.0)) == Catch::Approx(detail::norm2(inst.b)));

    CHECK_THROWS_AS(make_problem("P0"), ConfigError);
    CHECK_THROWS_AS(make_problem("P16"), ConfigError);
    CHECK_THROWS_AS(make_problem("Q3"), ConfigError);
    CHECK_THROWS_AS(make_problem(""), ConfigError);
    CHECK_THROWS_AS(make_problem("SPARSE:"), ConfigError);
    CHECK_THROWS_AS(make_problem("SPARSE:12x"), ConfigError);
    CHECK_THROWS_AS(make_problem("SPARSE:-3"), ConfigError);
    CHECK_THROWS_AS(make_problem("SPARSE:99999999999999999999999999"), ConfigError);
}

TEST_CASE("start-region presets") {
    CHECK(kParetoSweepBox.lo == 0.0);
    CHECK(kParetoSweepBox.hi == 2.0);
    CHECK(kComparisonGrid.k == 13);
    CHECK(kComparisonGrid.box.lo == -3.0);
    CHECK(kComparisonGrid.box.hi == 3.0);
}
