#include "rfb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rfb/errors.hpp"

namespace rfb {

namespace {

std::string frac_str(const Fraction& f) { return to_string(f); }

Fraction frac_from(const Json& j) { return parse_fraction(j.get<std::string>()); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* region_name(OmegaRegion r) {
  return r == OmegaRegion::NegHalf ? "neg" : "pos";
}

const char* variant_name(MappingVariant v) {
  return v == MappingVariant::Map1 ? "map1" : "map2";
}

}  // namespace

Json plan_to_json(const BankPlan& plan) {
  Json channels = Json::array();
  for (const ChannelPlan& ch : plan.channels) {
    channels.push_back(Json{{"lo", frac_str(ch.lo)},
                            {"hi", frac_str(ch.hi)},
                            {"Q", ch.Q},
                            {"P1", ch.P1},
                            {"P2", ch.P2},
                            {"P", ch.P},
                            {"doubled", ch.doubled},
                            {"Rdim", ch.Rdim},
                            {"Sdim", ch.Sdim},
                            {"m", ch.m},
                            {"rowOffset", ch.rowOffset},
                            {"rowCount", ch.rowCount}});
  }
  return Json{{"channels", channels},
              {"S", plan.S},
              {"rowCounts", plan.rowCounts},
              {"residueCounts", plan.residueCounts}};
}

BankPlan plan_from_json(const Json& j) {
  BankPlan plan;
  for (const Json& c : j.at("channels")) {
    ChannelPlan ch;
    ch.lo = frac_from(c.at("lo"));
    ch.hi = frac_from(c.at("hi"));
    ch.Q = c.at("Q").get<std::int64_t>();
    ch.P1 = c.at("P1").get<std::int64_t>();
    ch.P2 = c.at("P2").get<std::int64_t>();
    ch.P = c.at("P").get<std::int64_t>();
    ch.doubled = c.at("doubled").get<bool>();
    ch.Rdim = c.at("Rdim").get<std::int64_t>();
    ch.Sdim = c.at("Sdim").get<std::int64_t>();
    ch.m = c.at("m").get<std::int64_t>();
    ch.rowOffset = c.at("rowOffset").get<std::int64_t>();
    ch.rowCount = c.at("rowCount").get<std::int64_t>();
    plan.channels.push_back(ch);
  }
  plan.S = j.at("S").get<std::int64_t>();
  plan.rowCounts = j.at("rowCounts").get<std::vector<std::int64_t>>();
  plan.residueCounts = j.at("residueCounts").get<std::vector<std::int64_t>>();
  return plan;
}

Json imm_to_json(const Imm& imm) {
  Json ones = Json::array();
  for (std::int64_t l = 0; l < imm.rows; ++l) {
    ones.push_back(Json::array({l, imm.ones[l]}));
  }
  return Json{{"rows", imm.rows},
              {"cols", imm.cols},
              {"region", region_name(imm.region)},
              {"variant", variant_name(imm.variant)},
              {"ones", ones}};
}

Imm imm_from_json(const Json& j) {
  Imm imm;
  imm.rows = j.at("rows").get<std::int64_t>();
  imm.cols = j.at("cols").get<std::int64_t>();
  imm.region = j.at("region").get<std::string>() == "neg" ? OmegaRegion::NegHalf
                                                          : OmegaRegion::PosHalf;
  imm.variant = j.at("variant").get<std::string>() == "map1" ? MappingVariant::Map1
                                                             : MappingVariant::Map2;
  imm.ones.assign(imm.rows, 0);
  for (const Json& e : j.at("ones")) {
    imm.ones.at(e.at(0).get<std::int64_t>()) = e.at(1).get<std::int64_t>();
  }
  return imm;
}

Json mask_to_json(const SpectrumMask& mask) {
  Json j = Json::array();
  for (const Interval& iv : mask.intervals) {
    j.push_back(Json::array({frac_str(iv.lo), frac_str(iv.hi)}));
  }
  return j;
}

SpectrumMask mask_from_json(const Json& j) {
  std::vector<Interval> parts;
  for (const Json& e : j) {
    parts.push_back({parse_fraction(e.at(0).get<std::string>()),
                     parse_fraction(e.at(1).get<std::string>())});
  }
  return make_mask(parts);
}

Json spec_to_json(const CharFilterSpec& spec) {
  return Json{{"channel", spec.channel},
              {"d", spec.d},
              {"representative", Json::array({spec.representative.first, spec.representative.second})},
              {"idealPass", mask_to_json(spec.idealPass)},
              {"stopband", mask_to_json(spec.stopband)},
              {"diagnostic", spec.diagnostic}};
}

CharFilterSpec spec_from_json(const Json& j) {
  CharFilterSpec spec;
  spec.channel = j.at("channel").get<int>();
  spec.d = j.at("d").get<std::int64_t>();
  spec.representative = {j.at("representative").at(0).get<std::int64_t>(),
                         j.at("representative").at(1).get<std::int64_t>()};
  spec.idealPass = mask_from_json(j.at("idealPass"));
  spec.stopband = mask_from_json(j.at("stopband"));
  spec.diagnostic = j.at("diagnostic").get<std::string>();
  return spec;
}

Json theta_to_json(const ThetaVector& theta) {
  return Json{{"N", theta.N}, {"K", theta.K}, {"angles", theta.angles}};
}

ThetaVector theta_from_json(const Json& j) {
  ThetaVector theta;
  theta.N = j.at("N").get<int>();
  theta.K = j.at("K").get<int>();
  theta.angles = j.at("angles").get<std::vector<double>>();
  if (theta.angles.size() != ThetaVector::expected_size(theta.N, theta.K)) {
    throw ParseError("theta angle count does not match (N, K)");
  }
  return theta;
}

Json fir_to_json(const PolyphaseFir& fir) {
  Json taps = Json::array();
  for (const Mat& tap : fir.taps) taps.push_back(tap.a);  // row-major
  return Json{{"N", fir.N}, {"order", fir.order}, {"taps", taps}};
}

PolyphaseFir fir_from_json(const Json& j) {
  PolyphaseFir fir;
  fir.N = j.at("N").get<int>();
  fir.order = j.at("order").get<int>();
  for (const Json& tap : j.at("taps")) {
    Mat m(fir.N, fir.N);
    m.a = tap.get<std::vector<double>>();
    if (m.a.size() != static_cast<std::size_t>(fir.N) * fir.N) {
      throw ParseError("tap matrix size mismatch");
    }
    fir.taps.push_back(std::move(m));
  }
  if (fir.taps.size() != static_cast<std::size_t>(fir.order) + 1) {
    throw ParseError("tap count does not match the order");
  }
  return fir;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << body;
  if (!out) throw IoError("write failed for " + path);
}

std::vector<double> read_signal(const std::string& path, SignalFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::vector<double> out;
  if (format == SignalFormat::F64) {
    double v;
    while (in.read(reinterpret_cast<char*>(&v), sizeof(v))) out.push_back(v);
    return out;
  }
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(line, &used);
      out.push_back(v);
      (void)used;
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineNo) + ": bad sample '" + line + "'");
    }
  }
  return out;
}

void write_signal(const std::string& path, const std::vector<double>& samples,
                  SignalFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  if (format == SignalFormat::F64) {
    out.write(reinterpret_cast<const char*>(samples.data()),
              static_cast<std::streamsize>(samples.size() * sizeof(double)));
  } else {
    for (double v : samples) out << format_double(v) << "\n";
  }
  if (!out) throw IoError("write failed for " + path);
}

std::string trace_to_csv(const OptimizationTrace& trace) {
  std::ostringstream out;
  out << "iteration,D,gradNorm\n";
  for (const TracePoint& p : trace.iterates) {
    out << p.iteration << "," << format_double(p.value) << "," << format_double(p.gradNorm)
        << "\n";
  }
  return out.str();
}

std::string response_to_csv(const std::vector<double>& omegaOverPi,
                            const std::vector<double>& magDb,
                            const std::vector<double>& idealDb) {
  std::ostringstream out;
  out << "omega_over_pi,mag_db,ideal_db\n";
  for (std::size_t i = 0; i < omegaOverPi.size(); ++i) {
    out << format_double(omegaOverPi[i]) << "," << format_double(magDb[i]) << ","
        << format_double(idealDb[i]) << "\n";
  }
  return out.str();
}

std::string channel_coeffs_to_csv(const PolyphaseFir& fir, const ChannelPlan& ch) {
  std::ostringstream out;
  out << "phase_row,tap";
  for (int c = 0; c < fir.N; ++c) out << ",c" << c;
  out << "\n";
  for (std::int64_t r = 0; r < ch.rowCount; ++r) {
    for (std::size_t t = 0; t < fir.taps.size(); ++t) {
      out << r << "," << t;
      for (int c = 0; c < fir.N; ++c) {
        out << "," << format_double(fir.taps[t].at(static_cast<int>(ch.rowOffset + r), c));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::vector<Fraction> parse_partition(const std::string& text) {
  std::vector<Fraction> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    // trim blanks
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty entry in partition '" + text + "'");
    out.push_back(parse_fraction(token.substr(b, e - b + 1)));
  }
  if (out.empty()) throw ParseError("empty partition");
  return out;
}

DesignConfig parse_design_config(const std::string& body) {
  DesignConfig config;
  bool sawPartition = false;
  std::istringstream in(body);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineNo) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      std::size_t x = s.find_first_not_of(" \t\r");
      std::size_t y = s.find_last_not_of(" \t\r");
      return x == std::string::npos ? std::string() : s.substr(x, y - x + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "fractions") {
        config.partition = parse_partition(value);
        sawPartition = true;
      } else if (key == "epsilon") {
        config.epsilon = parse_fraction(value);
      } else if (key == "stages") {
        config.stages = std::stoi(value);
      } else if (key == "gridSize") {
        config.gridSize = std::stoi(value);
      } else if (key == "restarts") {
        config.restarts = std::stoi(value);
      } else if (key == "maxIter") {
        config.maxIter = std::stoi(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else {
        throw ParseError("config line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("config line " + std::to_string(lineNo) + ": bad value '" + value + "'");
    }
  }
  if (!sawPartition) throw ParseError("config is missing 'fractions'");
  return config;
}

std::string design_config_to_text(const DesignConfig& config) {
  std::ostringstream out;
  out << "fractions = ";
  for (std::size_t i = 0; i < config.partition.size(); ++i) {
    if (i > 0) out << ",";
    out << to_string(config.partition[i]);
  }
  out << "\n";
  out << "epsilon = " << to_string(config.epsilon) << "\n";
  out << "stages = " << config.stages << "\n";
  out << "gridSize = " << config.gridSize << "\n";
  out << "restarts = " << config.restarts << "\n";
  out << "maxIter = " << config.maxIter << "\n";
  out << "seed = " << config.seed << "\n";
  return out.str();
}

}  // namespace rfb
