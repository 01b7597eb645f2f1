#include "qent/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qent/random.hpp"

namespace qent::io {

namespace {

[[noreturn]] void parse_fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_fail("cannot write '" + path + "'");
  out << text;
}

SystemShape dims_field(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc["dims"].is_array())
    parse_fail("field 'dims' must be an array of integers");
  std::vector<int> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) parse_fail("field 'dims' must be an array of integers");
    dims.push_back(d.get<int>());
  }
  return SystemShape(std::move(dims));
}

Vector complex_array(const json& doc, const char* field, BasisIndex expected) {
  if (!doc.contains(field) || !doc[field].is_array()) parse_fail(std::string("field '") + field + "' must be an array");
  const json& arr = doc[field];
  if (arr.size() != expected)
    parse_fail(std::string("field '") + field + "' has " + std::to_string(arr.size()) + " entries, expected " +
               std::to_string(expected));
  Vector v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& z = arr[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      parse_fail(std::string("entry ") + std::to_string(i) + " of '" + field + "' is not a [re, im] pair");
    v(static_cast<Eigen::Index>(i)) = Complex(z[0].get<double>(), z[1].get<double>());
  }
  return v;
}

json pairs(const Vector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

json dims_json(const SystemShape& shape) { return json(std::vector<int>(shape.dims().begin(), shape.dims().end())); }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    parse_fail(std::string("bad ") + what + " '" + std::string(text) + "'");
  return value;
}

void expect_parts(const std::vector<std::string>& parts, std::size_t n, const std::string& spec) {
  if (parts.size() != n) parse_fail("malformed spec '" + spec + "'");
}

void format_into(const json& v, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close_pad = indent > 0 ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  switch (v.type()) {
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += std::string(",") + nl;
        first = false;
        out += pad + json(it.key()).dump() + (indent > 0 ? ": " : ":");
        format_into(it.value(), indent, depth + 1, out);
      }
      out += nl + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_primitive(); });
      out += "[";
      if (!flat) out += nl;
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += flat ? (indent > 0 ? ", " : ",") : std::string(",") + nl;
        first = false;
        if (!flat) out += pad;
        format_into(e, indent, depth + 1, out);
      }
      if (!flat) out += nl + close_pad;
      out += "]";
      return;
    }
    default:
      out += v.dump();
  }
}

}  // namespace

// --- files ---------------------------------------------------------------------

StateVector parse_state(std::string_view text) {
  const json doc = parse_document(text);
  SystemShape shape = dims_field(doc);
  Vector amps = complex_array(doc, "amps", shape.size());
  return make_state(std::move(shape), std::move(amps));
}

DensityMatrix parse_density(std::string_view text) {
  const json doc = parse_document(text);
  SystemShape shape = dims_field(doc);
  const auto n = static_cast<Eigen::Index>(shape.size());
  const Vector flat = complex_array(doc, "rho", shape.size() * shape.size());
  Matrix rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = flat(i * n + j);
  return make_density(std::move(shape), std::move(rho));
}

std::string state_to_text(const StateVector& state) {
  json doc;
  doc["dims"] = dims_json(state.shape());
  doc["amps"] = pairs(state.amplitudes());
  return format_json(doc, 0) + "\n";
}

std::string density_to_text(const DensityMatrix& rho) {
  const Matrix& m = rho.entries();
  Vector flat(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) flat(i * m.cols() + j) = m(i, j);
  json doc;
  doc["dims"] = dims_json(rho.shape());
  doc["rho"] = pairs(flat);
  return format_json(doc, 0) + "\n";
}

StateVector read_state_file(const std::string& path) {
  try {
    return parse_state(read_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

DensityMatrix read_density_file(const std::string& path) {
  try {
    return parse_density(read_text(path));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void write_state_file(const std::string& path, const StateVector& state) { write_text(path, state_to_text(state)); }

void write_density_file(const std::string& path, const DensityMatrix& rho) { write_text(path, density_to_text(rho)); }

// --- named families ------------------------------------------------------------

StateVector bell_state() {
  const double a = 1.0 / std::sqrt(2.0);
  const Complex amps[] = {a, 0.0, 0.0, a};
  return make_state(SystemShape::qubits(2), amps);
}

StateVector ghz_state(int n) {
  const SystemShape shape = SystemShape::qubits(n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.size()));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return make_state(shape, std::move(v));
}

StateVector w_state(int n) {
  const SystemShape shape = SystemShape::qubits(n);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(shape.size()));
  for (int j = 0; j < n; ++j) v(Eigen::Index{1} << j) = 1.0 / std::sqrt(static_cast<double>(n));
  return make_state(shape, std::move(v));
}

std::vector<int> parse_dims(std::string_view text) {
  std::vector<int> dims;
  for (const auto& part : split(text, ',')) dims.push_back(parse_number<int>(part, "dimension"));
  return dims;
}

StateVector resolve_state(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return read_state_file(spec);
  const std::vector<std::string> parts = split(spec, ':');
  const std::string& family = parts.front();
  if (family == "bell") {
    expect_parts(parts, 1, spec);
    return bell_state();
  }
  if (family == "ghz" || family == "w") {
    expect_parts(parts, 2, spec);
    const int n = parse_number<int>(parts[1], "site count");
    if (n < 2 || n > 20) parse_fail("site count must be in [2, 20]");
    return family == "ghz" ? ghz_state(n) : w_state(n);
  }
  if (family == "uniform") {
    expect_parts(parts, 2, spec);
    return uniform_state(SystemShape(parse_dims(parts[1])));
  }
  if (family == "basis") {
    expect_parts(parts, 3, spec);
    return basis_state(SystemShape(parse_dims(parts[1])), parse_number<BasisIndex>(parts[2], "index"));
  }
  if (family == "random" || family == "product-random") {
    expect_parts(parts, 3, spec);
    const SystemShape shape(parse_dims(parts[1]));
    const auto seed = parse_number<std::uint64_t>(parts[2], "seed");
    return family == "random" ? random_state(shape, seed) : product_to_state(random_product(shape, seed));
  }
  parse_fail("unknown state spec '" + spec + "' (not a file or a known family)");
}

DensityMatrix resolve_density(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return read_density_file(spec);
  const std::size_t colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  if (family == "pure" && colon != std::string::npos) return density_from_state(resolve_state(spec.substr(colon + 1)));
  const std::vector<std::string> parts = split(spec, ':');
  if (family == "maximally-mixed") {
    expect_parts(parts, 2, spec);
    return maximally_mixed(SystemShape(parse_dims(parts[1])));
  }
  if (family == "random-mixed" || family == "product-mixed") {
    expect_parts(parts, 3, spec);
    const SystemShape shape(parse_dims(parts[1]));
    const auto seed = parse_number<std::uint64_t>(parts[2], "seed");
    if (family == "random-mixed") return random_density(shape, seed);
    std::vector<DensityMatrix> locals;
    for (int j = 0; j < shape.sites(); ++j)
      locals.push_back(random_density(SystemShape({shape.dim(j)}), derive_seed(seed, static_cast<std::uint64_t>(j))));
    return tensor_product(locals);
  }
  parse_fail("unknown density spec '" + spec + "' (not a file or a known family)");
}

// --- rendering -----------------------------------------------------------------

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_json(const json& value, int indent) {
  std::string out;
  format_into(value, indent, 0, out);
  return out;
}

json to_json(const ProductState& p) {
  json factors = json::array();
  for (const Vector& f : p.factors()) factors.push_back(pairs(f));
  return factors;
}

json to_json(const PmaxResult& r) {
  return json{{"value", r.value},
              {"argmax", to_json(r.argmax)},
              {"restarts_used", r.restarts_used},
              {"sweeps", r.sweeps},
              {"converged", r.converged},
              {"best_per_restart", r.best_per_restart}};
}

json to_json(const MeasureReport& r) {
  return json{{"pmax", r.pmax},
              {"groverian", r.groverian},
              {"vedral_e", r.vedral_e},
              {"method", std::string(to_string(r.method))},
              {"restarts_used", r.restarts_used},
              {"sweeps", r.sweeps},
              {"converged", r.converged}};
}

json to_json(const OptimizerConfig& cfg) {
  return json{{"restarts", cfg.restarts}, {"tol", cfg.tol}, {"max_sweeps", cfg.max_sweeps}, {"seed", cfg.seed}};
}

}  // namespace qent::io
