#include "xorgames/serialize.hpp"

#include <charconv>
#include <cstdlib>
#include <numeric>

#include <nlohmann/json.hpp>

namespace xorgames {

using ordered_json = nlohmann::ordered_json;

std::string decimal_string(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_decimal(const std::string& s) {
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc{}) {
    throw DomainError("parse_decimal: cannot parse '" + s + "'");
  }
  return out;
}

namespace {

ordered_json cmatrix_to_json(const CMatrix& m) {
  ordered_json entries = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      entries.push_back({decimal_string(m(i, j).real()), decimal_string(m(i, j).imag())});
    }
  }
  return ordered_json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

CMatrix cmatrix_from_json(const ordered_json& j) {
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const auto& entries = j.at("entries");
  if (Index(entries.size()) != rows * cols) {
    throw ShapeError("matrix json: entry count does not match rows*cols");
  }
  CMatrix m(rows, cols);
  Index idx = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index jj = 0; jj < cols; ++jj, ++idx) {
      m(i, jj) = Complex(parse_decimal(entries[size_t(idx)][0].get<std::string>()),
                         parse_decimal(entries[size_t(idx)][1].get<std::string>()));
    }
  }
  return m;
}

}  // namespace

std::string game_to_json(const GameMatrix& g) {
  ordered_json j;
  j["version"] = kToolkitVersion;
  j["type"] = "xor_game";
  j["kind"] = g.kind == GameKind::XOR ? "XOR" : "BINARY_PREDICATE";
  j["alice_labels"] = g.alice_labels;
  ordered_json bl = ordered_json::array();
  for (const auto& [a, b] : g.bob_labels) bl.push_back({a, b});
  j["bob_labels"] = bl;
  ordered_json entries = ordered_json::array();
  for (Index r = 0; r < g.rows(); ++r) {
    for (Index c = 0; c < g.cols(); ++c) entries.push_back(decimal_string(g.entries(r, c)));
  }
  j["entries"] = entries;
  if (g.has_exact()) {
    j["denominator"] = g.denominator;
    ordered_json nums = ordered_json::array();
    for (Index r = 0; r < g.rows(); ++r) {
      for (Index c = 0; c < g.cols(); ++c) nums.push_back(g.numerators(r, c));
    }
    j["numerators"] = nums;
  }
  j["signed_sum"] = decimal_string(g.signed_sum());
  j["abs_sum"] = decimal_string(g.abs_sum());
  return j.dump(2) + "\n";
}

GameMatrix game_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (j.at("type").get<std::string>() != "xor_game") {
    throw DomainError("game json: field 'type' must be 'xor_game'");
  }
  GameMatrix g;
  g.kind = j.at("kind").get<std::string>() == "XOR" ? GameKind::XOR
                                                    : GameKind::BinaryPredicate;
  g.alice_labels = j.at("alice_labels").get<std::vector<int>>();
  for (const auto& bl : j.at("bob_labels")) {
    g.bob_labels.emplace_back(bl[0].get<int>(), bl[1].get<int>());
  }
  const Index rows = Index(g.alice_labels.size());
  const Index cols = Index(g.bob_labels.size());
  const auto& entries = j.at("entries");
  if (Index(entries.size()) != rows * cols) {
    throw ShapeError("game json: field 'entries' has wrong length");
  }
  g.entries.resize(rows, cols);
  Index idx = 0;
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c, ++idx) {
      g.entries(r, c) = parse_decimal(entries[size_t(idx)].get<std::string>());
    }
  }
  if (j.contains("denominator")) {
    g.denominator = j.at("denominator").get<std::int64_t>();
    const auto& nums = j.at("numerators");
    g.numerators.resize(rows, cols);
    idx = 0;
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c, ++idx) {
        g.numerators(r, c) = nums[size_t(idx)].get<std::int64_t>();
      }
    }
  }
  return g;
}

std::string binary_game_to_json(const BinaryGame& bg) {
  ordered_json j;
  j["version"] = kToolkitVersion;
  j["type"] = "binary_game";
  ordered_json qs = ordered_json::array();
  for (const auto& [s, t] : bg.questions) qs.push_back({s, t});
  j["questions"] = qs;
  ordered_json probs = ordered_json::array();
  for (auto num : bg.prob_num) probs.push_back(Fraction{num, bg.prob_den}.str());
  j["probabilities"] = probs;
  ordered_json table = ordered_json::array();
  for (const auto& w : bg.win) {
    table.push_back({{w[0][0], w[0][1]}, {w[1][0], w[1][1]}});
  }
  j["win_table"] = table;
  const auto values = binary_game_values(bg);
  j["classical_value"] = values.classical_value.str();
  j["classical_bias"] = values.classical_bias.str();
  return j.dump(2) + "\n";
}

BinaryGame binary_game_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (j.at("type").get<std::string>() != "binary_game") {
    throw DomainError("binary game json: field 'type' must be 'binary_game'");
  }
  BinaryGame bg;
  for (const auto& q : j.at("questions")) {
    bg.questions.emplace_back(q[0].get<int>(), q[1].get<int>());
  }
  // probabilities serialized as reduced fractions over a common denominator
  std::int64_t den = 1;
  std::vector<Fraction> fracs;
  for (const auto& p : j.at("probabilities")) {
    const std::string s = p.get<std::string>();
    const auto slash = s.find('/');
    Fraction f{std::stoll(s.substr(0, slash)),
               slash == std::string::npos ? 1 : std::stoll(s.substr(slash + 1))};
    den = std::lcm(den, f.den);
    fracs.push_back(f);
  }
  bg.prob_den = den;
  for (const auto& f : fracs) bg.prob_num.push_back(f.num * (den / f.den));
  for (const auto& w : j.at("win_table")) {
    std::array<std::array<bool, 2>, 2> row{};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) row[size_t(a)][size_t(b)] = w[a][b].get<bool>();
    }
    bg.win.push_back(row);
  }
  return bg;
}

std::string strategy_to_json(const Strategy& s) {
  ordered_json j;
  j["version"] = kToolkitVersion;
  j["type"] = "strategy";
  j["dim_a"] = s.dim_a();
  j["dim_b"] = s.dim_b();
  ordered_json alice = ordered_json::object();
  for (const auto& [label, obs] : s.alice) alice[std::to_string(label)] = cmatrix_to_json(obs);
  j["alice"] = alice;
  ordered_json pairs = ordered_json::object();
  for (const auto& [label, obs] : s.bob_pairs) {
    pairs[std::to_string(label.first) + "," + std::to_string(label.second)] =
        cmatrix_to_json(obs);
  }
  j["bob_pairs"] = pairs;
  ordered_json singles = ordered_json::object();
  for (const auto& [label, obs] : s.bob_singles) {
    singles[std::to_string(label)] = cmatrix_to_json(obs);
  }
  j["bob_singles"] = singles;
  ordered_json amps = ordered_json::array();
  for (Index i = 0; i < s.state.amplitudes.size(); ++i) {
    amps.push_back({decimal_string(s.state.amplitudes(i).real()),
                    decimal_string(s.state.amplitudes(i).imag())});
  }
  j["state"] = amps;
  return j.dump(2) + "\n";
}

Strategy strategy_from_json(const std::string& text) {
  const ordered_json j = ordered_json::parse(text);
  if (!j.contains("version")) {
    throw DomainError("strategy json: field 'version' is mandatory");
  }
  if (j.at("type").get<std::string>() != "strategy") {
    throw DomainError("strategy json: field 'type' must be 'strategy'");
  }
  const Index da = j.at("dim_a").get<Index>();
  const Index db = j.at("dim_b").get<Index>();
  const auto& amps = j.at("state");
  CVector amp(Index(amps.size()));
  for (Index i = 0; i < amp.size(); ++i) {
    amp(i) = Complex(parse_decimal(amps[size_t(i)][0].get<std::string>()),
                     parse_decimal(amps[size_t(i)][1].get<std::string>()));
  }
  Strategy s(BipartiteState(da, db, std::move(amp)));
  for (const auto& [key, value] : j.at("alice").items()) {
    s.alice[std::stoi(key)] = cmatrix_from_json(value);
  }
  for (const auto& [key, value] : j.at("bob_pairs").items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos) {
      throw DomainError("strategy json: bob_pairs key must be 'j,k'");
    }
    s.bob_pairs[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
        cmatrix_from_json(value);
  }
  for (const auto& [key, value] : j.at("bob_singles").items()) {
    s.bob_singles[std::stoi(key)] = cmatrix_from_json(value);
  }
  return s;
}

std::string certificate_to_json(const SdpCertificate& cert) {
  ordered_json j;
  j["version"] = kToolkitVersion;
  j["type"] = "sdp_certificate";
  j["n"] = cert.n;
  j["m"] = cert.m;
  auto rmat = [](const RMatrix& m) {
    ordered_json arr = ordered_json::array();
    for (Index r = 0; r < m.rows(); ++r) {
      for (Index c = 0; c < m.cols(); ++c) arr.push_back(decimal_string(m(r, c)));
    }
    return arr;
  };
  j["gsym"] = rmat(cert.gsym);
  j["Z"] = rmat(cert.Z);
  ordered_json y = ordered_json::array();
  for (Index i = 0; i < cert.y.size(); ++i) y.push_back(decimal_string(cert.y(i)));
  j["y"] = y;
  j["objective"] = decimal_string(cert.objective);
  j["gap"] = decimal_string(cert.gap);
  return j.dump(2) + "\n";
}

}  // namespace xorgames
