#include "rgbr/chain.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgbr/error.hpp"

namespace rgbr {
namespace {

void require_admissible(const MemoryOneStrategy& p, const MemoryOneStrategy& q) {
  if (!q.completely_mixed()) {
    throw Error(ErrorKind::NotCompletelyMixed, "opponent strategy must be completely mixed");
  }
  if (!p.responder_valid()) {
    throw Error(ErrorKind::RepeatStrategyForbidden, "(1,1,0,0) is not an admissible responder");
  }
}

double det3(double a, double b, double c, double d, double e, double f, double g, double h,
            double i) {
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Signed cofactors of the f column (column 4) of the Press-Dyson matrix, so
// that D(p,q,f) = sum_i cofactor[i] * f[i].
Vec4 f_column_cofactors(const Vec4& p, const Vec4& q) {
  // Columns 1..3 of the determinant, rows cc, cd, dc, dd. The opponent's
  // entries use its own outcome labels, hence q3 in row cd and q2 in row dc.
  const double m[4][3] = {
      {p[0] * q[0] - 1.0, p[0] - 1.0, q[0] - 1.0},
      {p[1] * q[2], p[1] - 1.0, q[2]},
      {p[2] * q[1], p[2], q[1] - 1.0},
      {p[3] * q[3], p[3], q[3]},
  };
  Vec4 cof{};
  for (int row = 0; row < 4; ++row) {
    double minor[3][3];
    int r = 0;
    for (int k = 0; k < 4; ++k) {
      if (k == row) continue;
      for (int c = 0; c < 3; ++c) minor[r][c] = m[k][c];
      ++r;
    }
    const double d = det3(minor[0][0], minor[0][1], minor[0][2], minor[1][0], minor[1][1],
                          minor[1][2], minor[2][0], minor[2][1], minor[2][2]);
    // Sign of cofactor (row, 3) is (-1)^(row + 3).
    cof[row] = (row % 2 == 0) ? -d : d;
  }
  return cof;
}

double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

}  // namespace

ChainModel build_transition_matrix(const MemoryOneStrategy& p, const MemoryOneStrategy& q) {
  ChainModel chain{{}, p, q};
  for (Outcome o : kOutcomes) {
    const double x = p.cooperate_after(o);
    const double y = q.cooperate_after(perspective_swap(o));
    chain.matrix[index(o)] = {x * y, x * (1.0 - y), (1.0 - x) * y, (1.0 - x) * (1.0 - y)};
  }
  return chain;
}

StationaryDistribution stationary_distribution(const ChainModel& chain) {
  // v M = v  <=>  (M^T - I) v^T = 0; the last balance row becomes sum(v) = 1.
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = chain.matrix[j][i] - (i == j ? 1.0 : 0.0);
  a.row(3).setOnes();
  Eigen::Vector4d b(0.0, 0.0, 0.0, 1.0);

  Eigen::FullPivLU<Eigen::Matrix4d> lu(a);
  lu.setThreshold(tolerance::kStructural);
  if (lu.rank() < 4) {
    throw Error(ErrorKind::SingularChain, "stationary system is rank deficient");
  }
  const Eigen::Vector4d x = lu.solve(b);

  StationaryDistribution out{{x(0), x(1), x(2), x(3)}, 0.0};
  for (int j = 0; j < 4; ++j) {
    double vm = 0.0;
    for (int i = 0; i < 4; ++i) vm += out.v[i] * chain.matrix[i][j];
    out.residual = std::max(out.residual, std::abs(vm - out.v[j]));
  }
  return out;
}

double determinant_d(const MemoryOneStrategy& p, const MemoryOneStrategy& q, const Vec4& f) {
  return dot(f_column_cofactors(p.probs(), q.probs()), f);
}

double row_payoff(const Vec4& p, const Vec4& q, const GameSpec& game) {
  const Vec4 cof = f_column_cofactors(p, q);
  const double denom = cof[0] + cof[1] + cof[2] + cof[3];
  if (std::abs(denom) < tolerance::kSingular) {
    throw Error(ErrorKind::NearSingular, "|D(p,q,1)| is below the singular threshold");
  }
  return dot(cof, game.payoff_x()) / denom;
}

PayoffPair average_payoffs(const MemoryOneStrategy& p, const MemoryOneStrategy& q,
                           const GameSpec& game) {
  require_admissible(p, q);
  const Vec4 cof = f_column_cofactors(p.probs(), q.probs());
  const double denom = cof[0] + cof[1] + cof[2] + cof[3];
  if (std::abs(denom) < tolerance::kSingular) {
    std::ostringstream os;
    os << "|D(p,q,1)| = " << std::abs(denom) << " is below " << tolerance::kSingular;
    throw Error(ErrorKind::NearSingular, os.str());
  }
  return {dot(cof, game.payoff_x()) / denom, dot(cof, game.payoff_y()) / denom};
}

PayoffPair payoff_via_stationary(const MemoryOneStrategy& p, const MemoryOneStrategy& q,
                                 const GameSpec& game) {
  require_admissible(p, q);
  const StationaryDistribution sd = stationary_distribution(build_transition_matrix(p, q));
  return {dot(sd.v, game.payoff_x()), dot(sd.v, game.payoff_y())};
}

}  // namespace rgbr
