#include <doctest.h>

#include <cmath>
#include <set>

#include "hypertree/error.hpp"
#include "hypertree/exact_enum.hpp"
#include "hypertree/exact_q.hpp"
#include "oracles.hpp"

using namespace hypertree;

namespace {

mpz_class fact(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// Labelled s-uniform hypertrees: (n-1)! n^(t-1) / (t! ((s-1)!)^t).
mpz_class tree_count_oracle(long n, long s) {
  const long t = (n - 1) / (s - 1);
  mpz_class num = fact(n - 1), den = fact(t);
  for (long i = 0; i < t; ++i) den *= fact(s - 1);
  mpz_class pw = 1;
  for (long i = 0; i + 1 < t; ++i) pw *= n;
  return num * pw / den;
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(make_q(8, 10) == make_q(4, 5));
  CHECK(to_string(make_q(-6, 4)) == "-3/2");
  CHECK(parse_q("-3/2") == make_q(-3, 2));
  CHECK(parse_q("7") == ExactQ(7));
  CHECK_THROWS_AS(parse_q("1/0"), ValidationError);
  CHECK_THROWS_AS(parse_q("x"), ValidationError);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(3, 5) == 0);
  CHECK(gen_binomial(make_q(1, 2), 2) == make_q(-1, 8));
  CHECK(gen_binomial(ExactQ(-1), 3) == ExactQ(-1));
  CHECK(falling(7, 3) == 210);
  CHECK(pow_q(make_q(2, 3), 3) == make_q(8, 27));
  CHECK(pow_q(make_q(2, 3), -2) == make_q(9, 4));
  CHECK(log_abs(ExactQ(mpz_class("1000000000000000000000000000000"))) ==
        doctest::Approx(30 * std::log(10.0)).epsilon(1e-15));
  CHECK(require_integer(ExactQ(12), "x") == 12);
  CHECK_THROWS_AS(require_integer(make_q(1, 2), "x"), DomainError);
}

TEST_CASE("partition counts") {
  CHECK(num_partitions(6, 3) == 10);
  CHECK_THROWS_AS(num_partitions(5, 3), ValidationError);
  CHECK(num_partitions(0, 3) == 1);
  for (long t = 2; t <= 24; t += 2) {
    mpz_class oracle = fact(t) / fact(t / 2);
    for (long i = 0; i < t / 2; ++i) oracle /= 2;
    CHECK(num_partitions(t, 2) == oracle);
  }
  CHECK(num_partitions(12, 3) == mpz_class(static_cast<unsigned long>(oracle::count_pairings(3, 3, 4))));
}

TEST_CASE("tree counts agree with the closed product") {
  for (long s = 2; s <= 5; ++s) {
    for (long n = 1; n <= 25; n += s - 1) {
      CHECK(count_uniform_trees(n, static_cast<int>(s)) == tree_count_oracle(n, s));
    }
  }
  CHECK_THROWS_AS(count_uniform_trees(4, 3), ValidationError);
}

TEST_CASE("degree sequences") {
  CHECK_THROWS_AS(validate_degree_sequence({{1, 1, 3}}, 2), ValidationError);
  CHECK_THROWS_AS(validate_degree_sequence({{0, 2, 2}}, 2), ValidationError);
  CHECK_NOTHROW(validate_degree_sequence({{1, 2, 1}}, 2));
  // Graph trees: (n-2)! / prod (d_i - 1)!.
  CHECK(count_trees_with_degrees({{1, 3, 1, 1, 3, 1}}, 2) == fact(4) / (fact(2) * fact(2)));
  for (auto [n, s] : {std::pair{6, 2}, std::pair{7, 3}, std::pair{9, 3}, std::pair{9, 5}, std::pair{10, 4}}) {
    mpz_class total = 0;
    std::size_t sequences = 0;
    for_each_degree_sequence(n, s, [&](const TreeDegreeSequence& d) {
      ++sequences;
      CHECK_NOTHROW(validate_degree_sequence(d, s));
      total += count_trees_with_degrees(d, s);
    });
    CHECK(sequences > 0);
    CHECK(total == count_uniform_trees(n, s));
  }
}

TEST_CASE("enumerated trees are distinct, valid and complete") {
  for (auto [n, s] : {std::pair{3, 2}, std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}, std::pair{7, 3}}) {
    const auto trees = enumerate_uniform_trees(n, s);
    std::set<std::vector<std::vector<Vertex>>> distinct;
    for (const auto& t : trees) {
      distinct.insert(t.edge_list());
      std::vector<oracle::Edge> edges;
      for (const auto& e : t.edge_list()) edges.emplace_back(e.begin(), e.end());
      CHECK(oracle::is_tree(n, edges));
    }
    CHECK(distinct.size() == trees.size());
    CHECK(mpz_class(static_cast<unsigned long>(trees.size())) == count_uniform_trees(n, s));
  }
}

TEST_CASE("configuration enumeration") {
  const ModelParams p = validate_params(2, 3, 3);
  const auto all = enumerate_configurations(p);
  CHECK(all.size() == 10);
  CHECK(std::set<Configuration>(all.begin(), all.end()).size() == 10);
  CHECK(enumerate_configurations(validate_params(3, 3, 4)).size() ==
        static_cast<std::size_t>(oracle::count_pairings(3, 3, 4)));
  CHECK_THROWS_AS(enumerate_configurations(validate_params(4, 2, 10), 1000), BudgetExceeded);
}

TEST_CASE("first moment: closed form, subpartition form and brute force") {
  for (auto [r, s, n] : {std::tuple{2, 3, 3}, std::tuple{3, 2, 4}, std::tuple{2, 2, 3}, std::tuple{4, 2, 3},
                         std::tuple{3, 3, 5}, std::tuple{2, 2, 4}, std::tuple{3, 2, 2}}) {
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(n);
    const ModelParams p = validate_params(r, s, n);
    const auto [m1, m2] = oracle::tree_moments(r, s, n);
    CHECK(exact_expected_Y(p) == m1);
    CHECK(expected_Y_by_subpartitions(p) == m1);
    CHECK(brute_moments(p, {}, 1) == m1);
    CHECK(log_expected_Y(p) == doctest::Approx(static_cast<double>(log_abs(m1))).epsilon(1e-13));
  }
  CHECK(exact_expected_Y(validate_params(2, 3, 3)) == make_q(4, 5));
  CHECK(exact_expected_Y(validate_params(3, 2, 4)) == make_q(72, 11));
}

TEST_CASE("second moment equals brute force") {
  for (auto [r, s, n] : {std::tuple{2, 3, 3}, std::tuple{3, 2, 4}, std::tuple{2, 2, 3}, std::tuple{4, 2, 3},
                         std::tuple{3, 3, 5}}) {
    CAPTURE(r);
    CAPTURE(s);
    CAPTURE(n);
    const ModelParams p = validate_params(r, s, n);
    const auto [m1, m2] = oracle::tree_moments(r, s, n);
    const SecondMoment exact = exact_second_moment(p, MomentMode::Exact);
    REQUIRE(exact.exact.has_value());
    CHECK(*exact.exact == m2);
    const SecondMoment approx = exact_second_moment(p, MomentMode::LogFloat);
    CHECK_FALSE(approx.exact.has_value());
    CHECK(approx.log_value == doctest::Approx(static_cast<double>(log_abs(m2))).epsilon(1e-13));
  }
  CHECK(*exact_second_moment(validate_params(2, 3, 3), MomentMode::Exact).exact == make_q(8, 5));
}

TEST_CASE("exact and log-float second moments agree along ladders") {
  for (auto [r, s] : {std::pair{3, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 5}}) {
    for (std::int64_t n : admissible_ladder(r, s, 5)) {
      const ModelParams p = validate_params(r, s, n);
      const SecondMoment e = exact_second_moment(p, MomentMode::Exact);
      const SecondMoment f = exact_second_moment(p, MomentMode::LogFloat);
      CHECK(f.log_value == doctest::Approx(static_cast<double>(log_abs(*e.exact))).epsilon(1e-12));
      CHECK(e.terms == f.terms);
      // Cauchy-Schwarz: E Y^2 >= (E Y)^2.
      const ExactQ ey = exact_expected_Y(p);
      CHECK(*e.exact >= ey * ey);
    }
  }
  CHECK_THROWS_AS(exact_second_moment(validate_params(3, 2, 100), MomentMode::Exact, 50), BudgetExceeded);
}

TEST_CASE("second-moment terms vanish off the lattice support") {
  const ModelParams p = validate_params(3, 3, 9);
  CHECK(second_moment_term(p, 0, 1) == 0);
  CHECK_FALSE(log_second_moment_term(p, 0, 1).has_value());
  for (std::int64_t b = 3; b <= 9; b += 2) {
    for (std::int64_t k = 0; k <= 4; ++k) {
      const ExactQ t = second_moment_term(p, k, b);
      const auto lt = log_second_moment_term(p, k, b);
      CHECK(t >= 0);
      if (t == 0) {
        CHECK_FALSE(lt.has_value());
      } else {
        REQUIRE(lt.has_value());
        CHECK(*lt == doctest::Approx(static_cast<double>(log_abs(t))).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("joint moment with the loop count") {
  // E[Y X_1] by brute force: X_1 counts parts with a repeated cell.
  const int r = 3, s = 2, n = 4;
  mpz_class total = 0, sum = 0;
  oracle::for_each_pairing(r, s, n, [&](const std::vector<oracle::Edge>& edges) {
    long loops = 0;
    for (const auto& e : edges) loops += e[0] == e[1];
    total += 1;
    sum += oracle::count_trees(n, edges) * loops;
  });
  mpq_class expect(sum, total);
  expect.canonicalize();
  const int x[] = {1};
  CHECK(brute_moments(validate_params(r, s, n), x, 1) == expect);
}

TEST_CASE("Chu's identity on random rational instances") {
  const ExactQ xs3[] = {make_q(1, 2), make_q(-3, 7), ExactQ(5)};
  CHECK(chu_identity_check(4, 3, xs3, make_q(2, 3)));
  const ExactQ xs2[] = {ExactQ(3), make_q(11, 5)};
  CHECK(chu_identity_check(6, 2, xs2, ExactQ(-2)));
  const ExactQ xs1[] = {make_q(9, 4)};
  CHECK(chu_identity_check(5, 1, xs1, make_q(1, 3)));
  CHECK_THROWS_AS(chu_identity_check(3, 2, xs1, ExactQ(1)), ValidationError);
}

TEST_CASE("tree composition sum carries the (s-1)^k factor") {
  for (auto [r, s, n] : {std::tuple{2, 3, 9}, std::tuple{3, 3, 7}, std::tuple{4, 4, 10}, std::tuple{3, 2, 8}}) {
    const ModelParams p = validate_params(r, s, n);
    for (std::int64_t b = s; b <= n; b += s - 1) {
      const TreeSumCheck c = tree_sum(p, b);
      CHECK(c.direct == c.closed);
      CHECK(jensen_tree_sum_check(p, b));
      if (s == 2) {
        CHECK(c.closed_bare == c.closed);
      } else if (b < n) {
        CHECK(c.closed_bare != c.direct);
      }
    }
  }
}
