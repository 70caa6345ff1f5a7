#include "photonrc/network.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "photonrc/rng.hpp"

namespace photonrc {

double unitarity_error(const CMatrix& u) {
  const CMatrix defect = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff();
}

Eigen::Matrix2cd beamsplitter_phase_matrix(double alpha, double beta) {
  const Complex phase = std::polar(1.0, beta);
  const double t = std::cos(alpha);
  const double r = std::sin(alpha);
  Eigen::Matrix2cd c;
  c << t * phase, r,
      -r * phase, t;
  return c;
}

CMatrix givens_embed(const CMatrix& block, std::span<const std::size_t> mode_indices,
                     std::size_t dim) {
  const auto k = static_cast<std::size_t>(block.rows());
  if (block.rows() != block.cols()) throw std::invalid_argument("givens_embed: block not square");
  if (mode_indices.size() != k) {
    throw std::invalid_argument("givens_embed: expected " + std::to_string(k) + " mode indices");
  }
  std::set<std::size_t> seen;
  for (std::size_t idx : mode_indices) {
    if (idx >= dim) throw std::out_of_range("givens_embed: mode index out of range");
    if (!seen.insert(idx).second) throw std::invalid_argument("givens_embed: duplicate mode index");
  }
  CMatrix out = CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      out(static_cast<Eigen::Index>(mode_indices[r]), static_cast<Eigen::Index>(mode_indices[c])) =
          block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

Eigen::Matrix4cd ipbs_matrix(double alpha_h, double alpha_v) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const double th = std::cos(alpha_h), rh = std::sin(alpha_h);
  const double tv = std::cos(alpha_v), rv = std::sin(alpha_v);
  m(0, 0) = th;  m(0, 1) = rh;
  m(1, 0) = -rh; m(1, 1) = th;
  m(2, 2) = tv;  m(2, 3) = rv;
  m(3, 2) = -rv; m(3, 3) = tv;
  return m;
}

Eigen::Matrix2cd retarder_matrix(const RetarderPlate& plate) {
  // e^{-i eta/2} R(theta) diag(1, e^{-i eta}) R(-theta), conjugated by diag(1, e^{-i phi}).
  const Complex global = std::polar(1.0, -plate.eta / 2.0);
  const Complex slow = std::polar(1.0, -plate.eta);
  const double c = std::cos(plate.theta);
  const double s = std::sin(plate.theta);
  const Complex off = (1.0 - slow) * c * s;
  Eigen::Matrix2cd j;
  j << global * (c * c + slow * s * s), global * off * std::polar(1.0, -plate.phi),
      global * off * std::polar(1.0, plate.phi), global * (s * s + slow * c * c);
  return j;
}

Eigen::Matrix4cd retarder_pair_matrix(const RetarderPair& pair) {
  const Eigen::Matrix2cd a = retarder_matrix(pair.first);
  const Eigen::Matrix2cd b = retarder_matrix(pair.second);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  // Port m couples local (0, 2); port p couples (1, 3).
  m(0, 0) = a(0, 0); m(0, 2) = a(0, 1);
  m(2, 0) = a(1, 0); m(2, 2) = a(1, 1);
  m(1, 1) = b(0, 0); m(1, 3) = b(0, 1);
  m(3, 1) = b(1, 0); m(3, 3) = b(1, 1);
  return m;
}

Eigen::Matrix4cd crossing_phase_matrix(double phase) {
  const Complex p = std::polar(1.0, phase);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m(0, 0) = p;
  m(2, 2) = p;
  return m;
}

Eigen::Matrix4cd crossing_matrix(const Crossing& crossing) {
  return crossing_phase_matrix(crossing.phase) * retarder_pair_matrix(crossing.retarders) *
         ipbs_matrix(crossing.alpha_h, crossing.alpha_v);
}

std::array<std::size_t, 4> crossing_modes(std::size_t port_m, std::size_t port_p) {
  return {h_mode(port_m), h_mode(port_p), v_mode(port_m), v_mode(port_p)};
}

CMatrix output_phase_matrix(std::span<const double> psis) {
  const auto modes = static_cast<Eigen::Index>(2 * psis.size());
  CMatrix out = CMatrix::Zero(modes, modes);
  for (std::size_t m = 0; m < psis.size(); ++m) {
    const Complex p = std::polar(1.0, psis[m]);
    out(static_cast<Eigen::Index>(h_mode(m)), static_cast<Eigen::Index>(h_mode(m))) = p;
    out(static_cast<Eigen::Index>(v_mode(m)), static_cast<Eigen::Index>(v_mode(m))) = p;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> reck_port_pairs(std::size_t ports) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (ports < 2) return pairs;
  pairs.reserve(ports * (ports - 1) / 2);
  for (std::size_t m = ports - 1; m-- > 0;) {
    for (std::size_t p = m + 1; p < ports; ++p) pairs.emplace_back(m, p);
  }
  return pairs;
}

PolarisingNetwork::PolarisingNetwork(std::size_t ports, std::vector<Crossing> crossings,
                                     std::vector<double> output_phases,
                                     std::optional<std::uint64_t> seed)
    : ports_(ports),
      crossings_(std::move(crossings)),
      output_phases_(std::move(output_phases)),
      seed_(seed) {
  if (ports_ < 2) throw std::invalid_argument("PolarisingNetwork: need at least 2 ports");
  const auto pairs = reck_port_pairs(ports_);
  if (crossings_.size() != pairs.size()) {
    throw std::invalid_argument("PolarisingNetwork: expected " + std::to_string(pairs.size()) +
                                " crossings, got " + std::to_string(crossings_.size()));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (crossings_[i].port_m != pairs[i].first || crossings_[i].port_p != pairs[i].second) {
      throw std::invalid_argument("PolarisingNetwork: crossing " + std::to_string(i) +
                                  " is not in Reck order");
    }
  }
  if (output_phases_.size() != ports_) {
    throw std::invalid_argument("PolarisingNetwork: expected one output phase per port");
  }
  unitary_ = assemble(*this);
}

PolarisingNetwork PolarisingNetwork::with_reflectances(std::span<const double> alpha_h,
                                                       std::span<const double> alpha_v) const {
  if (alpha_h.size() != crossings_.size() || alpha_v.size() != crossings_.size()) {
    throw std::invalid_argument("with_reflectances: one value per crossing required");
  }
  std::vector<Crossing> crossings = crossings_;
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    crossings[i].alpha_h = alpha_h[i];
    crossings[i].alpha_v = alpha_v[i];
  }
  return PolarisingNetwork(ports_, std::move(crossings), output_phases_, seed_);
}

CMatrix assemble(const PolarisingNetwork& network) {
  const auto dim = static_cast<Eigen::Index>(network.mode_count());
  CMatrix lambda = output_phase_matrix(network.output_phases());
  // Right-multiplying by each embedded 4x4 only touches four columns.
  for (const Crossing& crossing : network.crossings()) {
    const Eigen::Matrix4cd block = crossing_matrix(crossing);
    const auto modes = crossing_modes(crossing.port_m, crossing.port_p);
    CMatrix cols(dim, 4);
    for (int c = 0; c < 4; ++c) cols.col(c) = lambda.col(static_cast<Eigen::Index>(modes[c]));
    const CMatrix mixed = cols * block;
    for (int c = 0; c < 4; ++c) lambda.col(static_cast<Eigen::Index>(modes[c])) = mixed.col(c);
  }
  return lambda;
}

PolarisingNetwork random_reservoir(std::size_t ports, std::uint64_t seed) {
  if (ports < 2) throw std::invalid_argument("random_reservoir: need at least 2 ports");
  Rng rng(seed);
  constexpr double two_pi = 2.0 * kPi;
  std::vector<Crossing> crossings;
  for (const auto& [m, p] : reck_port_pairs(ports)) {
    Crossing c;
    c.port_m = m;
    c.port_p = p;
    c.alpha_h = rng.uniform(0.0, kPi / 2.0);
    c.alpha_v = c.alpha_h;
    for (RetarderPlate* plate : {&c.retarders.first, &c.retarders.second}) {
      plate->eta = rng.uniform(0.0, two_pi);
      plate->phi = rng.uniform(0.0, two_pi);
      plate->theta = rng.uniform(0.0, two_pi);
    }
    c.phase = rng.uniform(0.0, two_pi);
    crossings.push_back(c);
  }
  std::vector<double> psis(ports);
  for (double& psi : psis) psi = rng.uniform(0.0, two_pi);
  return PolarisingNetwork(ports, std::move(crossings), std::move(psis), seed);
}

namespace {

nlohmann::json plate_json(const RetarderPlate& p) {
  return {{"eta", p.eta}, {"phi", p.phi}, {"theta", p.theta}};
}

RetarderPlate plate_from(const nlohmann::json& j) {
  return {j.at("eta").get<double>(), j.at("phi").get<double>(), j.at("theta").get<double>()};
}

}  // namespace

nlohmann::json to_json(const PolarisingNetwork& network) {
  nlohmann::json crossings = nlohmann::json::array();
  for (const Crossing& c : network.crossings()) {
    crossings.push_back({{"ports", {c.port_m, c.port_p}},
                         {"alpha_h", c.alpha_h},
                         {"alpha_v", c.alpha_v},
                         {"retarders", {plate_json(c.retarders.first), plate_json(c.retarders.second)}},
                         {"phase", c.phase}});
  }
  nlohmann::json doc = {{"format", "photonrc.network"},
                        {"ordering", PolarisingNetwork::kOrderingTag},
                        {"rng", Rng::kName},
                        {"ports", network.port_count()},
                        {"crossings", crossings},
                        {"output_phases", network.output_phases()}};
  doc["seed"] = network.seed() ? nlohmann::json(*network.seed()) : nlohmann::json(nullptr);
  return doc;
}

PolarisingNetwork network_from_json(const nlohmann::json& doc) {
  if (doc.value("format", "") != "photonrc.network") {
    throw std::invalid_argument("network document: unknown format");
  }
  if (doc.value("ordering", "") != PolarisingNetwork::kOrderingTag) {
    throw std::invalid_argument("network document: unsupported ordering tag");
  }
  std::vector<Crossing> crossings;
  for (const auto& j : doc.at("crossings")) {
    Crossing c;
    c.port_m = j.at("ports").at(0).get<std::size_t>();
    c.port_p = j.at("ports").at(1).get<std::size_t>();
    c.alpha_h = j.at("alpha_h").get<double>();
    c.alpha_v = j.at("alpha_v").get<double>();
    c.retarders.first = plate_from(j.at("retarders").at(0));
    c.retarders.second = plate_from(j.at("retarders").at(1));
    c.phase = j.at("phase").get<double>();
    crossings.push_back(c);
  }
  std::optional<std::uint64_t> seed;
  if (doc.contains("seed") && !doc.at("seed").is_null()) seed = doc.at("seed").get<std::uint64_t>();
  return PolarisingNetwork(doc.at("ports").get<std::size_t>(), std::move(crossings),
                           doc.at("output_phases").get<std::vector<double>>(), seed);
}

}  // namespace photonrc
