#include "girthlab/report.hpp"

#include "girthlab/format.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace girthlab {
namespace {

std::string num(double v) { return format_number(v); }

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

template <typename Scalar>
std::string kernel_rows(const Ball& ball, const KernelTable<Scalar>& t) {
  std::ostringstream o;
  o << "kind,n,vertex,probability\n";
  const std::string kind = to_string(t.kind);
  for (int n = 0; n <= t.valid_horizon; ++n)
    for (VertexId v = 0; v < t.steps[n].size(); ++v) {
      const double p = probability(t, n, v);
      if (p != 0) o << kind << ',' << n << ',' << ball.label_string(v) << ',' << num(p) << '\n';
    }
  return o.str();
}

}  // namespace

std::string crossing_csv(const std::vector<CrossingEstimate>& rows, std::uint64_t seed) {
  std::ostringstream o;
  o << "p,R,estimate,ci_lo,ci_hi,T,seed\n";
  for (const auto& r : rows)
    o << num(r.p) << ',' << r.radius << ',' << num(r.estimate) << ',' << num(r.ci.lo) << ',' << num(r.ci.hi) << ','
      << r.trials << ',' << seed << '\n';
  return o.str();
}

std::string tail_csv(const TailCurve& curve) {
  std::ostringstream o;
  o << "n,survival_fraction\n";
  for (const auto& pt : curve.points) o << pt.n << ',' << num(pt.fraction) << '\n';
  return o.str();
}

std::string diagram_csv(const std::vector<DiagramResult>& rows, const std::string& param) {
  std::ostringstream o;
  o << param << ",value,se,tail_bound,chain_tail,certified,method,truncation\n";
  for (const auto& r : rows)
    o << num(r.p) << ',' << num(r.value) << ',' << num(r.se) << ',' << opt(r.tail_bound) << ','
      << opt(r.chain_tail) << ',' << (r.certified ? 1 : 0) << ',' << to_string(r.method) << ',' << r.truncation
      << '\n';
  return o.str();
}

std::string susceptibility_csv(const std::vector<SusceptibilityPoint>& rows) {
  std::ostringstream o;
  o << "p,mean,se,censored,exact\n";
  for (const auto& r : rows)
    o << num(r.p) << ',' << num(r.mean.mean) << ',' << num(r.mean.se) << ',' << r.censored << ',' << opt(r.exact)
      << '\n';
  return o.str();
}

std::string witness_csv(const WitnessResult& w) {
  std::ostringstream o;
  o << "distance,two_point,two_point_se,margin,margin_lo\n";
  for (const auto& r : w.rows)
    o << r.distance << ',' << num(r.two_point) << ',' << num(r.two_point_se) << ',' << num(r.margin) << ','
      << num(r.margin_lo) << '\n';
  return o.str();
}

std::string census_csv(const SawCensus& census) {
  std::ostringstream o;
  o << "n,c_n\n";
  for (int n = 0; n <= census.n_max; ++n) o << n << ',' << census.counts[n].str() << '\n';
  return o.str();
}

std::string endpoint_csv(const SawCensus& census) {
  std::ostringstream o;
  o << "n,vertex,count\n";
  if (!census.has_endpoints()) return o.str();
  for (int n = 0; n <= census.n_max; ++n)
    for (VertexId v = 0; v < census.endpoint[n].size(); ++v)
      if (census.endpoint[n][v] != 0) o << n << ',' << census.ball->label_string(v) << ',' << census.endpoint[n][v] << '\n';
  return o.str();
}

std::string chi_csv(const ChiCurve& curve) {
  std::ostringstream o;
  o << "z,value,tail,certified,ratio_lo,ratio_hi\n";
  for (const auto& p : curve.points)
    o << num(p.z) << ',' << num(p.chi) << ',' << opt(p.tail) << ',' << (p.tail ? 1 : 0) << ',' << num(p.ratio_lo)
      << ',' << num(p.ratio_hi) << '\n';
  return o.str();
}

std::string kernel_csv(const Ball& ball, const FloatKernel& table) { return kernel_rows(ball, table); }
std::string kernel_csv(const Ball& ball, const ExactKernel& table) { return kernel_rows(ball, table); }

std::string speed_csv(const SpeedCurve& curve, const RosenbluthResult* sampled) {
  std::ostringstream o;
  o << "n,exact,mass_below,mass_bound";
  if (sampled) o << ",rosenbluth,rosenbluth_weight,rosenbluth_se";
  o << '\n';
  for (const auto& p : curve.points) {
    o << p.n << ',' << num(p.exact) << ',' << num(p.mass_below) << ',' << num(p.mass_bound);
    if (sampled) {
      if (p.n < static_cast<int>(sampled->lengths.size())) {
        const auto& l = sampled->lengths[p.n];
        o << ',' << num(l.speed) << ',' << num(l.weight.mean) << ',' << num(l.weight.se);
      } else {
        o << ",,,";
      }
    }
    o << '\n';
  }
  return o.str();
}

std::string decay_csv(const DecayCheck& check) {
  std::ostringstream o;
  o << "n,sup,bound,lambda_bound,within\n";
  for (const auto& r : check.rows)
    o << r.n << ',' << num(r.sup) << ',' << num(r.bound) << ',' << num(check.constant * std::pow(check.lambda, r.n))
      << ',' << (r.within ? 1 : 0) << '\n';
  return o.str();
}

std::string rho_csv(const RhoEstimate& est) {
  std::ostringstream o;
  o << "n,sequence\n";
  for (std::size_t i = 0; i < est.sequence.size(); ++i) o << 2 * (i + 1) << ',' << num(est.sequence[i]) << '\n';
  return o.str();
}

void write_text(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      throw std::runtime_error("write failed for '" + path + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot move output into '" + path + "'");
  }
}

}  // namespace girthlab
