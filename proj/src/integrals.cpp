#include "csl/integrals.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "csl/error.hpp"

namespace csl {

namespace {

// B_(i) for i = 1..n+1 along an ascending order: upper[i-1] = {(i), ..., (n)}, upper[n] = {}.
std::vector<Subset> upper_sets(const std::vector<int>& order) {
  std::vector<Subset> upper(order.size() + 1);
  for (std::size_t i = order.size(); i-- > 0;) upper[i] = upper[i + 1] | Subset::singleton(order[i]);
  return upper;
}

// C_(i) for i = 0..n: lower[i] = {(1), ..., (i)}.
std::vector<Subset> lower_sets(const std::vector<int>& order) {
  std::vector<Subset> lower(order.size() + 1);
  for (std::size_t i = 0; i < order.size(); ++i) lower[i + 1] = lower[i] | Subset::singleton(order[i]);
  return lower;
}

using TermFn = std::function<std::vector<double>(const std::vector<int>&)>;

OperatorReport evaluate_orders(const PointFunction& f, PermutationPolicy policy, const TermFn& terms) {
  OperatorReport report;
  report.order = ascending_order(f);
  report.terms = terms(report.order);
  report.value = std::accumulate(report.terms.begin(), report.terms.end(), 0.0);
  report.min = report.max = report.value;
  report.permutations = 0;
  for_each_admissible_order(f, policy, [&](const std::vector<int>& order) {
    const auto t = terms(order);
    const double v = std::accumulate(t.begin(), t.end(), 0.0);
    report.min = std::min(report.min, v);
    report.max = std::max(report.max, v);
    ++report.permutations;
  });
  report.well_defined = approx_eq(report.min, report.max);
  return report;
}

void require_dominates(const MonotoneMeasure& mu, const MonotoneMeasure& muhat, const char* context) {
  require_same_ground(mu.ground(), muhat.ground(), context);
  if (!dominates(mu.set_function(), muhat.set_function())) {
    throw PreconditionError(std::string(context) + " requires mu >= muhat");
  }
}

}  // namespace

double choquet(const PointFunction& f, const MonotoneMeasure& mu, int form) {
  require_same_ground(f.ground(), mu.ground(), "choquet");
  const auto order = ascending_order(f);
  const auto upper = upper_sets(order);
  const std::size_t n = order.size();
  double sum = 0.0;
  switch (form) {
    case 1:
      for (std::size_t i = 0; i < n; ++i) sum += f(order[i]) * (mu(upper[i]) - mu(upper[i + 1]));
      return sum;
    case 2:
      for (std::size_t i = 0; i < n; ++i) {
        const double prev = i == 0 ? 0.0 : f(order[i - 1]);
        sum += (f(order[i]) - prev) * mu(upper[i]);
      }
      return sum;
    case 3:
      for (std::size_t i = 0; i < n; ++i) {
        const double prev = i == 0 ? 0.0 : f(order[i - 1]);
        sum += f(order[i]) * mu(upper[i]) - prev * mu(upper[i]);
      }
      return sum;
    case 4: {
      const SetFunction mob = mobius_transform(mu);
      for (std::uint32_t b = 1; b < f.ground().subset_count(); ++b) sum += mob(Subset(b)) * f.min_over(Subset(b));
      return sum;
    }
    default:
      throw MalformedInput("Choquet form must be 1, 2, 3 or 4, got " + std::to_string(form));
  }
}

void for_each_admissible_order(const PointFunction& f, PermutationPolicy policy,
                               const std::function<void(const std::vector<int>&)>& visit) {
  auto order = ascending_order(f);
  if (policy == PermutationPolicy::canonical) {
    visit(order);
    return;
  }
  // Tie groups as [begin, end) ranges of the canonical order.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t total = 1;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && approx_eq(f(order[j]), f(order[i]))) ++j;
    for (std::size_t k = 2; k <= j - i; ++k) {
      total *= k;
      if (total > kMaxPermutations) throw CapacityError("too many admissible orderings");
    }
    groups.emplace_back(i, j);
    i = j;
  }
  // Odometer over the groups; each group cycles through its permutations in lexicographic order.
  while (true) {
    visit(order);
    std::size_t g = groups.size();
    while (g-- > 0) {
      auto first = order.begin() + static_cast<std::ptrdiff_t>(groups[g].first);
      auto last = order.begin() + static_cast<std::ptrdiff_t>(groups[g].second);
      if (std::next_permutation(first, last)) break;
      if (g == 0) return;
    }
    if (groups.empty()) return;
  }
}

OperatorReport fc_operator(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu,
                           const MonotoneMeasure& muhat, PermutationPolicy policy) {
  require_same_ground(f.ground(), mu.ground(), "fc_operator");
  require_dominates(mu, muhat, "fc_operator");
  return evaluate_orders(f, policy, [&](const std::vector<int>& order) {
    const auto upper = upper_sets(order);
    std::vector<double> t(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) t[i] = op(f(order[i]), mu(upper[i]) - muhat(upper[i + 1]));
    return t;
  });
}

double fc_levelset(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu) {
  require_same_ground(f.ground(), mu.ground(), "fc_levelset");
  const auto order = ascending_order(f);
  double sum = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const double v = f(order[i]);
    const double next = i + 1 < order.size() ? mu(f.level_set(f(order[i + 1]))) : 0.0;
    sum += op(v, mu(f.level_set(v)) - next);
  }
  return sum;
}

OperatorReport rc_operator(const BinaryOp& op, const PointFunction& f, const MonotoneMeasure& mu,
                           const MonotoneMeasure& muhat, PermutationPolicy policy) {
  require_same_ground(f.ground(), mu.ground(), "rc_operator");
  require_dominates(mu, muhat, "rc_operator");
  return evaluate_orders(f, policy, [&](const std::vector<int>& order) {
    const auto lower = lower_sets(order);
    std::vector<double> t(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) t[i] = op(f(order[i]), mu(lower[i + 1]) - muhat(lower[i]));
    return t;
  });
}

std::pair<MonotoneMeasure, MonotoneMeasure> reverse_dual_pair(const MonotoneMeasure& mu,
                                                              const MonotoneMeasure& muhat) {
  require_same_ground(mu.ground(), muhat.ground(), "reverse_dual_pair");
  if (!approx_eq(mu.total(), muhat.total())) {
    throw PreconditionError("the reverse/forward duality needs mu(X) = muhat(X)");
  }
  return {dual_measure(muhat), dual_measure(mu)};
}

OperatorReport d_choquet(const Dissimilarity& delta, const BinaryOp& op, const PointFunction& f,
                         const MonotoneMeasure& mu, PermutationPolicy policy, LevelMode mode) {
  require_same_ground(f.ground(), mu.ground(), "d_choquet");
  if (mode == LevelMode::clamp) throw MalformedInput("d_choquet has no clamp mode");
  return evaluate_orders(f, policy, [&](const std::vector<int>& order) {
    const auto upper = upper_sets(order);
    std::vector<double> t(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double v = f(order[i]);
      const double prev = i == 0 ? 0.0 : f(order[i - 1]);
      const Subset s = mode == LevelMode::levelset ? f.level_set(v) : upper[i];
      t[i] = op(delta(v, prev), mu(s));
    }
    return t;
  });
}

OperatorReport cff_operator(const FPair& pair, const PointFunction& f, const MonotoneMeasure& mu,
                            PermutationPolicy policy, LevelMode mode) {
  require_same_ground(f.ground(), mu.ground(), "cff_operator");
  auto report = evaluate_orders(f, policy, [&](const std::vector<int>& order) {
    const auto upper = upper_sets(order);
    std::vector<double> t(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      const double v = f(order[i]);
      const double prev = i == 0 ? 0.0 : f(order[i - 1]);
      const double m = mu(mode == LevelMode::levelset ? f.level_set(v) : upper[i]);
      t[i] = pair.f1()(v, m) - pair.f2()(prev, m);
    }
    return t;
  });
  if (mode == LevelMode::clamp) {
    report.value = std::min(1.0, report.value);
    report.min = std::min(1.0, report.min);
    report.max = std::min(1.0, report.max);
  }
  return report;
}

namespace {

bool is_product(const BinaryOp& F) {
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double a = 0.4 * i, b = 0.4 * j;
      if (!approx_eq(F(a, b), a * b)) return false;
    }
  }
  return true;
}

// Maximizes sum a_D mu(D) over {a >= 0, sum a_D 1_D <= f} by visiting every basic solution.
std::pair<double, std::vector<double>> lp_vertex_max(const Collection& c, const PointFunction& f,
                                                     const MonotoneMeasure& mu) {
  const auto& members = c.members();
  const int k = static_cast<int>(members.size());
  const int n = f.n();
  const int m = n + k;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, k);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd w(k);
  for (int x = 0; x < n; ++x) {
    for (int d = 0; d < k; ++d) A(x, d) = members[static_cast<std::size_t>(d)].contains(x + 1) ? 1.0 : 0.0;
    b(x) = f(x + 1);
  }
  for (int d = 0; d < k; ++d) {
    A(n + d, d) = -1.0;
    w(d) = mu(members[static_cast<std::size_t>(d)]);
  }

  double best = 0.0;
  std::vector<double> best_a(static_cast<std::size_t>(k), 0.0);
  std::vector<int> rows(static_cast<std::size_t>(k));
  std::vector<bool> pick(static_cast<std::size_t>(m), false);
  std::fill(pick.end() - k, pick.end(), true);
  do {
    int r = 0;
    for (int i = 0; i < m; ++i) {
      if (pick[static_cast<std::size_t>(i)]) rows[static_cast<std::size_t>(r++)] = i;
    }
    Eigen::MatrixXd As(k, k);
    Eigen::VectorXd bs(k);
    for (int i = 0; i < k; ++i) {
      As.row(i) = A.row(rows[static_cast<std::size_t>(i)]);
      bs(i) = b(rows[static_cast<std::size_t>(i)]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(As);
    if (lu.rank() < k) continue;
    const Eigen::VectorXd a = lu.solve(bs);
    const Eigen::VectorXd slack = b - A * a;
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) feasible = slack(i) >= -kEps * tol_scale(b(i), 0.0);
    if (!feasible) continue;
    const double value = w.dot(a);
    if (value > best) {
      best = value;
      for (int d = 0; d < k; ++d) best_a[static_cast<std::size_t>(d)] = std::max(a(d), 0.0);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return {best, best_a};
}

std::pair<double, std::vector<double>> grid_max(const BinaryOp& F, const Collection& c, const PointFunction& f,
                                                const MonotoneMeasure& mu, double step) {
  const auto& members = c.members();
  std::vector<double> residual(f.values().begin(), f.values().end());
  std::vector<double> a(members.size(), 0.0);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_a = a;
  std::size_t visited = 0;

  std::function<void(std::size_t, double)> descend = [&](std::size_t idx, double acc) {
    if (idx == members.size()) {
      if (++visited > kMaxGridPoints) throw CapacityError("grid decomposition exceeds the point budget");
      if (acc > best) {
        best = acc;
        best_a = a;
      }
      return;
    }
    const Subset d = members[idx];
    double room = std::numeric_limits<double>::infinity();
    for (int p : d.points()) room = std::min(room, residual[static_cast<std::size_t>(p - 1)]);
    const auto steps = static_cast<long>(std::floor(room / step + kEps));
    for (long s = 0; s <= steps; ++s) {
      const double v = static_cast<double>(s) * step;
      for (int p : d.points()) residual[static_cast<std::size_t>(p - 1)] -= v;
      a[idx] = v;
      descend(idx + 1, acc + F(v, mu(d)));
      for (int p : d.points()) residual[static_cast<std::size_t>(p - 1)] += v;
    }
    a[idx] = 0.0;
  };
  descend(0, 0.0);
  return {best, best_a};
}

}  // namespace

DecompositionResult f_decomposition_direct(const BinaryOp& F, const DecompositionSystem& system,
                                           const PointFunction& f, const MonotoneMeasure& mu,
                                           DecompositionMethod method, double step) {
  require_same_ground(f.ground(), mu.ground(), "f_decomposition_direct");
  require_same_ground(f.ground(), system.ground(), "f_decomposition_direct");
  switch (method) {
    case DecompositionMethod::partition_exact:
      if (auto v = check_nondecreasing(F)) throw PreconditionError("partition method needs a nondecreasing F: " + v->what);
      break;
    case DecompositionMethod::lp_vertex:
      if (!is_product(F)) throw PreconditionError("vertex enumeration needs F(a, b) = a * b");
      break;
    case DecompositionMethod::grid:
      if (!(step > 0.0) || !std::isfinite(step)) throw PreconditionError("grid method needs a positive step");
      break;
  }

  DecompositionResult result;
  result.value = -std::numeric_limits<double>::infinity();
  system.for_each([&](const Collection& c) {
    std::pair<double, std::vector<double>> local;
    switch (method) {
      case DecompositionMethod::partition_exact: {
        if (!c.is_partition()) throw PreconditionError("partition method got a collection that is not a partition");
        local.first = 0.0;
        for (Subset d : c.members()) {
          local.second.push_back(f.min_over(d));
          local.first += F(local.second.back(), mu(d));
        }
        break;
      }
      case DecompositionMethod::lp_vertex:
        if (c.size() > kMaxLpVariables) throw CapacityError("vertex enumeration supports at most 8 sets per collection");
        local = lp_vertex_max(c, f, mu);
        break;
      case DecompositionMethod::grid:
        local = grid_max(F, c, f, mu, step);
        break;
    }
    if (local.first > result.value) {
      result.value = local.first;
      result.collection = c.members();
      result.coefficients = std::move(local.second);
    }
  });
  if (result.collection.empty()) throw PreconditionError("decomposition system is empty");
  return result;
}

namespace {

std::string describe(const std::string& what, const ProbeWitness& w) {
  std::string s = what + " fails on D = " + w.d.to_string() + ", f = (";
  for (std::size_t i = 0; i < w.f.size(); ++i) s += (i ? ", " : "") + std::to_string(w.f[i]);
  return s + ")" + (w.note.empty() ? "" : ": " + w.note);
}

}  // namespace

InteractionOperator InteractionOperator::make(const Fca& a, FunctionDomain domain, int trials, std::uint64_t seed) {
  for (FcaProperty p : {FcaProperty::conjunctive, FcaProperty::interaction_i1, FcaProperty::interaction_i3}) {
    const auto report = check_fca_property(a, p, trials, seed, domain);
    if (!report.holds) {
      throw PreconditionError(report.witness ? describe(to_string(p), *report.witness)
                                             : std::string(to_string(p)) + " fails");
    }
  }
  const auto axioms = check_condagg_axioms(a, trials, seed, domain);
  if (!axioms.c1_ok || !axioms.c2_ok) {
    throw PreconditionError(axioms.witness ? describe("monotonicity in f", *axioms.witness)
                                           : std::string("conditional aggregation axioms fail"));
  }
  return InteractionOperator(a, domain);
}

double ie_operator(const BinaryOp& op, const InteractionOperator& interaction, const PointFunction& f,
                   const MonotoneMeasure& mu) {
  require_same_ground(f.ground(), mu.ground(), "ie_operator");
  require_same_ground(f.ground(), interaction.fca().ground(), "ie_operator");
  if (interaction.domain() == FunctionDomain::unit && !f.in_unit_interval()) {
    throw PreconditionError("interaction operator was validated for [0,1]-valued functions only");
  }
  const SetFunction mob = mobius_transform(mu);
  double sum = 0.0;
  for (std::uint32_t b = 1; b < f.ground().subset_count(); ++b) {
    const Subset d(b);
    sum += op(interaction.fca()(f, d), mob(d));
  }
  return sum;
}

}  // namespace csl
