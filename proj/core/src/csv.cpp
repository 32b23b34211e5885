#include "bqs/csv.hpp"

#include "bqs/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bqs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path.string());
  return out;
}

struct CsvReader {
  std::filesystem::path path;
  std::vector<std::string> comments;
  std::vector<std::vector<std::string>> rows;
  std::string header;

  explicit CsvReader(const std::filesystem::path& p) : path(p) {
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open: " + p.string());
    std::string line;
    bool have_header = false;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (line.front() == '#') {
        comments.push_back(line);
        continue;
      }
      if (!have_header) {
        header = line;
        have_header = true;
        continue;
      }
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      if (!line.empty() && line.back() == ',') fields.push_back("");
      if (fields.empty()) {
        throw ParseError(p.string() + ":" + std::to_string(lineno) + ": empty row");
      }
      rows.push_back(std::move(fields));
    }
    if (!have_header) throw ParseError(p.string() + ": missing header row");
  }

  void expect_header(const std::string& expected) const {
    if (header != expected) {
      throw ParseError(path.string() + ": expected header '" + expected + "', got '" + header +
                       "'");
    }
  }

  /// Value of a "# key=value" comment, if present.
  std::optional<std::string> comment_value(const std::string& key) const {
    const std::string prefix = "# " + key + "=";
    for (const auto& c : comments) {
      if (c.rfind(prefix, 0) == 0) return c.substr(prefix.size());
    }
    return std::nullopt;
  }
};

double parse_double(const std::string& text, const std::filesystem::path& path) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw ParseError(path.string() + ": malformed number '" + text + "'");
  }
  return v;
}

long long parse_int(const std::string& text, const std::filesystem::path& path) {
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (end == text.c_str() || *end != '\0') {
    throw ParseError(path.string() + ": malformed integer '" + text + "'");
  }
  return v;
}

} // namespace

void write_state_csv(const std::filesystem::path& path, const QuditPureState& state) {
  auto out = open_out(path);
  out << "# dimension=" << state.dimension << "\n";
  out << "twice_l1,twice_l2,re,im\n";
  const auto slits = slit_indices(state.dimension);
  for (size_t i = 0; i < slits.size(); ++i) {
    for (size_t j = 0; j < slits.size(); ++j) {
      const auto c = state.at(static_cast<int>(i), static_cast<int>(j));
      if (std::abs(c) <= 1e-12) continue;
      out << slits[i].twice_l << ',' << slits[j].twice_l << ',' << format_double(c.real())
          << ',' << format_double(c.imag()) << "\n";
    }
  }
}

QuditPureState read_state_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  reader.expect_header("twice_l1,twice_l2,re,im");
  int dim = 0;
  if (const auto d = reader.comment_value("dimension")) {
    dim = static_cast<int>(parse_int(*d, path));
  } else {
    for (const auto& row : reader.rows) {
      if (row.size() != 4) throw ParseError(path.string() + ": state rows need 4 fields");
      dim = std::max(dim, static_cast<int>(std::abs(parse_int(row[0], path))) + 1);
      dim = std::max(dim, static_cast<int>(std::abs(parse_int(row[1], path))) + 1);
    }
  }
  if (dim < 2) throw ParseError(path.string() + ": state dimension below 2");
  QuditPureState state(dim);
  const int span = dim - 1;
  for (const auto& row : reader.rows) {
    if (row.size() != 4) throw ParseError(path.string() + ": state rows need 4 fields");
    const SlitIndex l1{static_cast<int>(parse_int(row[0], path))};
    const SlitIndex l2{static_cast<int>(parse_int(row[1], path))};
    if (!l1.valid_for(dim) || !l2.valid_for(dim)) {
      throw ParseError(path.string() + ": slit label (" + row[0] + "," + row[1] +
                       ") invalid for dimension " + std::to_string(dim));
    }
    state.at((l1.twice_l + span) / 2, (l2.twice_l + span) / 2) =
        Complex{parse_double(row[2], path), parse_double(row[3], path)};
  }
  return state;
}

void write_mixture_csv(const std::filesystem::path& path, const CorrelatedMixture& mixture) {
  auto out = open_out(path);
  out << "# dimension=" << mixture.dimension << "\n";
  out << "twice_l,weight\n";
  const auto slits = slit_indices(mixture.dimension);
  for (size_t i = 0; i < slits.size(); ++i) {
    out << slits[i].twice_l << ',' << format_double(mixture.weights[i]) << "\n";
  }
}

CorrelatedMixture read_mixture_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  reader.expect_header("twice_l,weight");
  int dim = static_cast<int>(reader.rows.size());
  if (const auto d = reader.comment_value("dimension")) {
    dim = static_cast<int>(parse_int(*d, path));
  }
  if (dim < 2 || static_cast<size_t>(dim) != reader.rows.size()) {
    throw ParseError(path.string() + ": mixture needs one weight per slit");
  }
  CorrelatedMixture m;
  m.dimension = dim;
  m.weights.assign(static_cast<size_t>(dim), 0.0);
  const int span = dim - 1;
  for (const auto& row : reader.rows) {
    if (row.size() != 2) throw ParseError(path.string() + ": mixture rows need 2 fields");
    const SlitIndex l{static_cast<int>(parse_int(row[0], path))};
    if (!l.valid_for(dim)) {
      throw ParseError(path.string() + ": slit label " + row[0] + " invalid for dimension " +
                       std::to_string(dim));
    }
    m.weights[static_cast<size_t>((l.twice_l + span) / 2)] = parse_double(row[1], path);
  }
  return m;
}

void write_scan_csv(const std::filesystem::path& path, const ScanRecord& record) {
  auto out = open_out(path);
  out << "# fixed_slit=" << record.fixed_slit.label() << "\n";
  out << "# seed=" << record.seed << "\n";
  out << "# acquisition_s=" << format_double(record.acquisition) << "\n";
  out << "# mean_pair_flux_hz=" << format_double(record.mean_pair_flux) << "\n";
  out << "x2_m,singles,coincidences\n";
  for (size_t i = 0; i < record.positions.size(); ++i) {
    out << format_double(record.positions[i]) << ',' << record.singles[i] << ','
        << record.coincidences[i] << "\n";
  }
}

ScanRecord read_scan_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  reader.expect_header("x2_m,singles,coincidences");
  ScanRecord rec;
  const auto slit_text = reader.comment_value("fixed_slit");
  if (!slit_text) throw ParseError(path.string() + ": missing '# fixed_slit=' comment");
  const auto slit = parse_slit_label(*slit_text);
  if (!slit) throw ParseError(path.string() + ": malformed fixed slit '" + *slit_text + "'");
  rec.fixed_slit = *slit;
  if (const auto s = reader.comment_value("seed")) {
    rec.seed = static_cast<std::uint64_t>(parse_int(*s, path));
  }
  if (const auto s = reader.comment_value("acquisition_s")) {
    rec.acquisition = parse_double(*s, path);
  }
  if (const auto s = reader.comment_value("mean_pair_flux_hz")) {
    rec.mean_pair_flux = parse_double(*s, path);
  }
  for (const auto& row : reader.rows) {
    if (row.size() != 3) throw ParseError(path.string() + ": scan rows need 3 fields");
    rec.positions.push_back(parse_double(row[0], path));
    const long long singles = parse_int(row[1], path);
    const long long coinc = parse_int(row[2], path);
    if (singles < 0 || coinc < 0) {
      throw ParseError(path.string() + ": negative count");
    }
    rec.singles.push_back(static_cast<std::uint64_t>(singles));
    rec.coincidences.push_back(static_cast<std::uint64_t>(coinc));
  }
  return rec;
}

void write_histogram_csv(const std::filesystem::path& path, const ProbabilityTable& table) {
  auto out = open_out(path);
  out << "# dimension=" << table.dimension << "\n";
  out << "twice_l1,twice_l2,probability,std_err\n";
  const auto slits = slit_indices(table.dimension);
  for (size_t i = 0; i < slits.size(); ++i) {
    for (size_t j = 0; j < slits.size(); ++j) {
      const size_t idx = i * slits.size() + j;
      out << slits[i].twice_l << ',' << slits[j].twice_l << ','
          << format_double(table.probability[idx]) << ',' << format_double(table.std_err[idx])
          << "\n";
    }
  }
}

ProbabilityTable read_histogram_csv(const std::filesystem::path& path) {
  CsvReader reader(path);
  reader.expect_header("twice_l1,twice_l2,probability,std_err");
  int dim = 0;
  if (const auto d = reader.comment_value("dimension")) {
    dim = static_cast<int>(parse_int(*d, path));
  } else {
    for (const auto& row : reader.rows) {
      if (row.size() != 4) throw ParseError(path.string() + ": histogram rows need 4 fields");
      dim = std::max(dim, static_cast<int>(std::abs(parse_int(row[0], path))) + 1);
    }
  }
  if (dim < 2) throw ParseError(path.string() + ": histogram dimension below 2");
  ProbabilityTable table;
  table.dimension = dim;
  table.probability.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), 0.0);
  table.std_err.assign(table.probability.size(), 0.0);
  const int span = dim - 1;
  for (const auto& row : reader.rows) {
    if (row.size() != 4) throw ParseError(path.string() + ": histogram rows need 4 fields");
    const SlitIndex l1{static_cast<int>(parse_int(row[0], path))};
    const SlitIndex l2{static_cast<int>(parse_int(row[1], path))};
    if (!l1.valid_for(dim) || !l2.valid_for(dim)) {
      throw ParseError(path.string() + ": slit label invalid for dimension " +
                       std::to_string(dim));
    }
    const size_t idx = static_cast<size_t>((l1.twice_l + span) / 2) * static_cast<size_t>(dim) +
                       static_cast<size_t>((l2.twice_l + span) / 2);
    table.probability[idx] = parse_double(row[2], path);
    table.std_err[idx] = parse_double(row[3], path);
  }
  return table;
}

void write_slice_csv(const std::filesystem::path& path, const FringeSlice& slice) {
  auto out = open_out(path);
  out << "# x2_m=" << format_double(slice.x2) << "\n";
  out << "# visibility=" << format_double(slice.visibility) << "\n";
  out << "x1_m,rate\n";
  for (size_t i = 0; i < slice.x1.size(); ++i) {
    out << format_double(slice.x1[i]) << ',' << format_double(slice.rate[i]) << "\n";
  }
}

void write_map_csv(const std::filesystem::path& path, const CoincidenceMap& map) {
  auto out = open_out(path);
  out << "# provenance=" << map.provenance << "\n";
  out << "x1_m,x2_m,rate\n";
  for (size_t i = 0; i < map.x1.size(); ++i) {
    for (size_t j = 0; j < map.x2.size(); ++j) {
      out << format_double(map.x1[i]) << ',' << format_double(map.x2[j]) << ','
          << format_double(map.rate[i * map.x2.size() + j]) << "\n";
    }
  }
}

void write_metrics_csv(const std::filesystem::path& path, const DiagnosticsReport& report) {
  auto out = open_out(path);
  out << "metric,value\n";
  for (size_t i = 0; i < report.schmidt.size(); ++i) {
    out << "schmidt_" << (i + 1) << ',' << format_double(report.schmidt[i]) << "\n";
  }
  if (report.entropy_bits) {
    out << "entropy_bits," << format_double(*report.entropy_bits) << "\n";
  }
  out << "negativity," << format_double(report.negativity) << "\n";
  out << "purity," << format_double(report.purity) << "\n";
  if (report.witness) {
    out << "witness_score," << format_double(report.witness->score) << "\n";
    for (size_t i = 0; i < report.witness->visibilities.size(); ++i) {
      out << "slice_visibility_" << (i + 1) << ','
          << format_double(report.witness->visibilities[i]) << "\n";
    }
    out << "verdict,"
        << (report.witness->entangled_signature ? "entangled-signature" : "no-signature") << "\n";
  }
}

std::string render_report_text(const DiagnosticsReport& report) {
  std::ostringstream os;
  os << "schmidt coefficients:";
  for (const double s : report.schmidt) os << ' ' << format_double(s);
  os << '\n';
  if (report.entropy_bits) {
    os << "entanglement entropy: " << format_double(*report.entropy_bits) << " bits\n";
  }
  os << "negativity: " << format_double(report.negativity) << '\n';
  os << "purity: " << format_double(report.purity) << '\n';
  if (report.witness) {
    os << "witness score: " << format_double(report.witness->score) << '\n';
    os << "slice visibilities:";
    for (const double v : report.witness->visibilities) os << ' ' << format_double(v);
    os << '\n';
    os << "verdict: "
       << (report.witness->entangled_signature ? "entangled-signature" : "no-signature") << '\n';
  }
  return os.str();
}

} // namespace bqs
