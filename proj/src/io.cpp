#include "hypzeta/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hypzeta/error.hpp"

namespace hypzeta {

using nlohmann::json;

namespace {

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) throw Error(ErrorCode::ParseError, where + ": expected a number");
  return j.get<double>();
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  return out;
}

}  // namespace

SchottkyGroup parse_group(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed group file: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "group file must hold a JSON object");
  for (const char* key : {"rank", "generators", "discs"})
    if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  if (!j["rank"].is_number_integer() || j["rank"].get<long>() < 1)
    throw Error(ErrorCode::ParseError, "\"rank\" must be a positive integer");
  const auto r = j["rank"].get<std::size_t>();
  const json& gens = j["generators"];
  const json& discs = j["discs"];
  if (!gens.is_array() || gens.size() != r)
    throw Error(ErrorCode::ParseError, "\"generators\" must list exactly rank matrices");
  if (!discs.is_array() || discs.size() != 2 * r)
    throw Error(ErrorCode::ParseError, "\"discs\" must list exactly 2 * rank discs");
  std::vector<Moebius> g;
  for (std::size_t i = 0; i < r; ++i) {
    const std::string where = "generators[" + std::to_string(i) + "]";
    if (!gens[i].is_array() || gens[i].size() != 4)
      throw Error(ErrorCode::ParseError, where + ": expected [a, b, c, d]");
    g.push_back({number_at(gens[i][0], where), number_at(gens[i][1], where), number_at(gens[i][2], where),
                 number_at(gens[i][3], where)});
  }
  std::vector<Disc> d;
  for (std::size_t i = 0; i < 2 * r; ++i) {
    const std::string where = "discs[" + std::to_string(i) + "]";
    if (!discs[i].is_object() || !discs[i].contains("center") || !discs[i].contains("radius"))
      throw Error(ErrorCode::ParseError, where + ": expected {\"center\": x, \"radius\": rho}");
    d.push_back({number_at(discs[i]["center"], where), number_at(discs[i]["radius"], where)});
  }
  return SchottkyGroup(std::move(g), std::move(d));
}

SchottkyGroup load_group(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read group file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_group(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + std::string(e.what()).substr(to_string(e.code()).size() + 2));
  }
}

json group_to_json(const SchottkyGroup& group) {
  json j;
  j["rank"] = group.rank();
  j["generators"] = json::array();
  for (const auto& g : group.generators()) j["generators"].push_back({g.a, g.b, g.c, g.d});
  j["discs"] = json::array();
  for (const auto& d : group.discs()) j["discs"].push_back({{"center", d.center}, {"radius", d.radius}});
  return j;
}

SchottkyGroup make_builder(const std::string& name, const std::vector<double>& params) {
  if (name == "three_funnel") {
    if (params.size() == 2) return three_funnel(params[0], params[1]);
    if (params.size() == 3) return three_funnel(params[0], params[1], params[2]);
    throw Error(ErrorCode::InvalidArgument, "three_funnel takes l1,l2[,outer_center]");
  }
  if (name == "cylinder") {
    if (params.size() == 1) return cylinder(params[0]);
    throw Error(ErrorCode::InvalidArgument, "cylinder takes one length");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown builder \"" + name + "\"");
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return os.str();
}

void CsvTable::write(const std::filesystem::path& path) const {
  auto out = open_out(path);
  out << str();
}

CsvTable classes_csv(const PrimitiveTable& table, int rank) {
  CsvTable t{{"word", "word_length", "geodesic_length"}, {}};
  for (int i = 1; i <= rank; ++i) t.header.push_back("hom_" + std::to_string(i));
  for (const auto& c : table.classes) {
    std::vector<std::string> row{c.representative.str(), std::to_string(c.word_length), format_number(c.length)};
    for (long h : c.hom) row.push_back(std::to_string(h));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable zeta_grid_csv(const std::vector<ZetaGridPoint>& grid) {
  const int r = grid.empty() ? 0 : grid.front().theta.rank();
  CsvTable t;
  for (int i = 1; i <= r; ++i) t.header.push_back("theta_" + std::to_string(i));
  for (const char* h : {"s_re", "s_im", "re_Z", "im_Z", "error_estimate"}) t.header.push_back(h);
  for (const auto& p : grid) {
    std::vector<std::string> row;
    for (double c : p.theta.coords()) row.push_back(format_number(c));
    for (double v : {p.s.real(), p.s.imag(), p.value.value.real(), p.value.value.imag(), p.value.error_estimate})
      row.push_back(format_number(v));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable resonances_csv(const std::vector<Resonance>& zeros, int rank, int order) {
  CsvTable t;
  for (int i = 1; i <= rank; ++i) t.header.push_back("theta_" + std::to_string(i));
  for (const char* h : {"s_re", "s_im", "multiplicity", "winding", "newton_residual", "det_error", "N_order"})
    t.header.push_back(h);
  for (const auto& z : zeros) {
    std::vector<std::string> row;
    for (double c : z.theta.coords()) row.push_back(format_number(c));
    row.push_back(format_number(z.s.real()));
    row.push_back(format_number(z.s.imag()));
    row.push_back(std::to_string(z.multiplicity));
    row.push_back(std::to_string(z.winding));
    row.push_back(format_number(z.newton_residual));
    row.push_back(format_number(z.det_error));
    row.push_back(std::to_string(order));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable homcount_csv(const std::vector<HomologyCountTable>& tables) {
  const int r = tables.empty() ? 0 : tables.front().rank;
  CsvTable t{{"T"}, {}};
  for (int i = 1; i <= r; ++i) t.header.push_back("alpha_" + std::to_string(i));
  t.header.push_back("count");
  t.header.push_back("normalized_count");
  for (const auto& tab : tables) {
    const auto norm = tab.normalized();
    for (std::size_t i = 0; i < tab.T.size(); ++i) {
      std::vector<std::string> row{format_number(tab.T[i])};
      for (long a : tab.alpha) row.push_back(std::to_string(a));
      row.push_back(std::to_string(tab.counts[i]));
      row.push_back(format_number(norm[i]));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

CsvTable histogram_csv(const Histogram& h) {
  CsvTable t{{"bin_lo", "bin_hi", "mass"}, {}};
  const int n = static_cast<int>(h.mass.size());
  for (int b = 0; b < n; ++b) {
    const double lo = h.lo + (h.hi - h.lo) * b / n, hi = h.lo + (h.hi - h.lo) * (b + 1) / n;
    t.rows.push_back({format_number(lo), format_number(hi), format_number(h.mass[b])});
  }
  return t;
}

void write_json(const std::filesystem::path& path, const json& value) {
  auto out = open_out(path);
  out << value.dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& csv, const std::string& command, const json& parameters) {
  json m;
  m["artifact"] = "hypzeta";
  m["version"] = kArtifactVersion;
  m["command"] = command;
  m["output"] = csv.filename().string();
  m["deterministic"] = true;
  m["parameters"] = parameters;
  write_json(csv.string() + ".manifest.json", m);
}

}  // namespace hypzeta
