#include "monotone_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bregenv/error.hpp"

namespace bregenv::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxExpansions = 400;

struct Probe {
  double t = 0.0;
  Interval r;
};

bool contains_zero(const Interval& r) { return r.lo <= 0.0 && 0.0 <= r.hi; }

double ulp(double t) {
  return std::nextafter(std::abs(t), kInf) - std::abs(t);
}

class Solver {
public:
  Solver(const InclusionProblem& p, double tol, int max_iter, bool allow_boundary)
      : p_(p), tol_(tol), max_iter_(max_iter), allow_boundary_(allow_boundary) {
    lo_edge_ = std::isfinite(p.lower) ? std::nextafter(p.lower, kInf) : -kInf;
    hi_edge_ = std::isfinite(p.upper) ? std::nextafter(p.upper, -kInf) : kInf;
  }

  InclusionResult run() {
    if (!(p_.start > p_.lower && p_.start < p_.upper)) {
      throw Error(ErrorCode::internal, "solver start point outside the open interval");
    }
    Probe s = eval(p_.start);
    if (contains_zero(s.r)) return finish(s);
    // Root lies left of the start when the residual is positive there.
    const int dir = s.r.lo > 0.0 ? -1 : 1;
    Probe a, b;
    bool bracketed = false;
    (dir > 0 ? a : b) = s;

    std::vector<double> kinks;
    for (double k : p_.kinks) {
      if (k > p_.lower && k < p_.upper && (k - p_.start) * dir > 0.0) kinks.push_back(k);
    }
    std::sort(kinks.begin(), kinks.end(),
              [&](double x, double y) { return std::abs(x - p_.start) < std::abs(y - p_.start); });
    for (double k : kinks) {
      Probe q = eval(k);
      if (contains_zero(q.r)) return finish(q);
      if (!advance(dir, q, a, b)) {
        bracketed = true;
        break;
      }
    }

    if (!bracketed) {
      Probe cur = dir > 0 ? a : b;
      for (int i = 0; i < kMaxExpansions && !bracketed; ++i) {
        const double next = expand(cur.t, dir);
        if (std::isnan(next) || next == cur.t) break;
        Probe q = eval(next);
        if (contains_zero(q.r)) return finish(q);
        bracketed = !advance(dir, q, a, b);
        cur = q;
      }
      if (!bracketed) {
        if (allow_boundary_) {
          InclusionResult r = finish(cur);
          r.at_boundary = true;
          return r;
        }
        throw Error(ErrorCode::solver_failure,
                    "no sign change of the optimality residual up to the domain boundary");
      }
    }
    return bisect(a, b);
  }

private:
  Probe eval(double t) {
    ++evals_;
    return {t, p_.residual(t)};
  }

  // Moves the bracket end on the start side; returns false once q lies on
  // the far side of the root (bracket complete).
  static bool advance(int dir, const Probe& q, Probe& a, Probe& b) {
    if (dir > 0) {
      if (q.r.hi < 0.0) {
        a = q;
        return true;
      }
      b = q;
      return false;
    }
    if (q.r.lo > 0.0) {
      b = q;
      return true;
    }
    a = q;
    return false;
  }

  double expand(double cur, int dir) const {
    const double bound = dir > 0 ? p_.upper : p_.lower;
    const double edge = dir > 0 ? hi_edge_ : lo_edge_;
    if (cur == edge) return cur;
    double next;
    if (std::isfinite(bound)) {
      next = bound - (bound - cur) / 16.0;
      if ((next - edge) * dir > 0.0 || next == cur) next = edge;
    } else {
      next = cur + dir * std::max(1.0, std::abs(cur)) * 3.0;
      if (!std::isfinite(next)) return std::numeric_limits<double>::quiet_NaN();
    }
    return next;
  }

  double midpoint(double a, double b) const {
    if (std::isfinite(p_.lower)) {
      const double da = a - p_.lower, db = b - p_.lower;
      if (da > 0.0 && db > 4.0 * da) return p_.lower + std::sqrt(da) * std::sqrt(db);
    }
    if (std::isfinite(p_.upper)) {
      const double ua = p_.upper - a, ub = p_.upper - b;
      if (ub > 0.0 && ua > 4.0 * ub) return p_.upper - std::sqrt(ua) * std::sqrt(ub);
    }
    return 0.5 * a + 0.5 * b;
  }

  double newton_candidate(const Probe& q) const {
    if (!p_.slope || q.r.lo != q.r.hi || !std::isfinite(q.r.lo)) return std::nan("");
    const double s = p_.slope(q.t);
    if (!(s > 0.0) || !std::isfinite(s)) return std::nan("");
    return q.t - q.r.lo / s;
  }

  InclusionResult bisect(Probe a, Probe b) {
    Probe last = std::abs(a.r.hi) < std::abs(b.r.lo) ? a : b;
    for (int it = 0; it < max_iter_; ++it) {
      const double width = b.t - a.t;
      double t = newton_candidate(last);
      bool newton = std::isfinite(t) && t > a.t && t < b.t && std::abs(t - last.t) < 0.5 * width;
      if (!newton) t = midpoint(a.t, b.t);
      if (t <= a.t || t >= b.t) return finish(best_of(a, b));
      const double step = std::abs(t - last.t);
      Probe q = eval(t);
      if (newton) newton_used_ = true;
      if (contains_zero(q.r)) return finish(q);
      if (q.r.hi < 0.0) a = q;
      else b = q;
      last = q;
      if (newton && step <= 4.0 * ulp(t)) return finish(q);
      if (b.t <= std::nextafter(a.t, kInf)) return finish(best_of(a, b));
    }
    const Probe best = best_of(a, b);
    if (best.r.distance_to_zero() <= tol_) return finish(best);
    throw Error(ErrorCode::not_converged,
                "root bracket did not collapse within " + std::to_string(max_iter_) +
                    " iterations");
  }

  static Probe best_of(const Probe& a, const Probe& b) {
    return a.r.distance_to_zero() <= b.r.distance_to_zero() ? a : b;
  }

  InclusionResult finish(const Probe& q) const {
    InclusionResult r;
    r.t = q.t;
    r.residual = q.r.distance_to_zero();
    r.iterations = evals_;
    r.newton_used = newton_used_;
    return r;
  }

  const InclusionProblem& p_;
  double tol_;
  int max_iter_;
  bool allow_boundary_;
  double lo_edge_ = 0.0;
  double hi_edge_ = 0.0;
  int evals_ = 0;
  bool newton_used_ = false;
};

} // namespace

InclusionResult solve_inclusion(const InclusionProblem& problem, double tol, int max_iter,
                                bool allow_boundary) {
  return Solver(problem, tol, max_iter, allow_boundary).run();
}

} // namespace bregenv::detail
