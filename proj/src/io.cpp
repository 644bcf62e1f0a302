#include "cqg/io.hpp"

#include <fstream>
#include <sstream>

#include "cqg/json_support.hpp"

namespace cqg {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected a complex number as [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols,
                     const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    std::ostringstream msg;
    msg << name << ": expected " << rows << " rows";
    throw ParseError(msg.str());
  }
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      std::ostringstream msg;
      msg << name << ": row " << i << " must have " << cols << " entries";
      throw ParseError(msg.str());
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[c]);
  }
  return m;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

Vec vector_from_json(const json& j, Eigen::Index size, const char* name) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    std::ostringstream msg;
    msg << name << ": expected " << size << " entries";
    throw ParseError(msg.str());
  }
  Vec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = complex_from_json(j[i]);
  return v;
}

json parse_document(const std::string& text, const char* expected_kind) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (!doc.contains("format_version") ||
      doc["format_version"].get<int>() != kFormatVersion) {
    throw ParseError("missing or unsupported format_version");
  }
  if (!doc.contains("kind") || doc["kind"] != expected_kind) {
    std::ostringstream msg;
    msg << "document kind must be \"" << expected_kind << "\"";
    throw ParseError(msg.str());
  }
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

std::string quantum_group_to_text(const FiniteQuantumGroup& g) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "quantum_group";
  doc["block_sizes"] = g.algebra()->block_sizes();
  doc["coproduct"] = matrix_to_json(g.coproduct().matrix());
  doc["counit"] = vector_to_json(g.counit().coeffs().transpose());
  doc["antipode"] = matrix_to_json(g.antipode().matrix());
  return doc.dump(1) + "\n";
}

void save_quantum_group(const FiniteQuantumGroup& g, const std::string& path) {
  write_file(path, quantum_group_to_text(g));
}

QuantumGroupPtr quantum_group_from_text(const std::string& text,
                                        const Tolerances& tol) {
  json doc = parse_document(text, "quantum_group");
  if (!doc.contains("block_sizes") || !doc["block_sizes"].is_array()) {
    throw ParseError("missing block_sizes");
  }
  std::vector<int> sizes;
  for (const auto& s : doc["block_sizes"]) {
    if (!s.is_number_integer() || s.get<int>() <= 0) {
      throw ParseError("block_sizes must be positive integers");
    }
    sizes.push_back(s.get<int>());
  }
  AlgebraPtr alg = make_algebra(sizes);
  const int n = alg->dim();
  if (!doc.contains("coproduct") || !doc.contains("counit") ||
      !doc.contains("antipode")) {
    throw ParseError("missing coproduct/counit/antipode");
  }
  Mat delta = matrix_from_json(doc["coproduct"],
                               static_cast<Eigen::Index>(n) * n, n, "coproduct");
  Vec eps = vector_from_json(doc["counit"], n, "counit");
  Mat kappa = matrix_from_json(doc["antipode"], n, n, "antipode");

  TensorStructure sq(alg, alg);
  auto group = std::make_shared<const FiniteQuantumGroup>(
      alg, LinearMap(alg, sq.product(), std::move(delta)),
      Functional(alg, eps.transpose()), LinearMap(alg, alg, std::move(kappa)));
  HopfReport report = verify_hopf(*group);
  if (!report.pass(tol)) {
    json rj = report;
    std::ostringstream msg;
    msg << "quantum group fails re-verification (max residual "
        << report.max_residual() << ")";
    throw ValidationError(msg.str(), rj.dump());
  }
  return group;
}

QuantumGroupPtr load_quantum_group(const std::string& path,
                                   const Tolerances& tol) {
  return quantum_group_from_text(read_file(path), tol);
}

std::string action_to_text(const FiniteAction& act) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = "action";
  doc["points"] = act.points();
  json grid = json::array();
  for (int i = 0; i < act.points(); ++i) {
    json row = json::array();
    for (int j = 0; j < act.points(); ++j) {
      row.push_back(vector_to_json(act.entry(i, j).coords()));
    }
    grid.push_back(std::move(row));
  }
  doc["grid"] = std::move(grid);
  return doc.dump(1) + "\n";
}

void save_action(const FiniteAction& act, const std::string& path) {
  write_file(path, action_to_text(act));
}

FiniteAction action_from_text(const std::string& text,
                              const QuantumGroupPtr& group,
                              const Tolerances& tol) {
  json doc = parse_document(text, "action");
  if (!doc.contains("points") || !doc["points"].is_number_integer() ||
      doc["points"].get<int>() <= 0) {
    throw ParseError("missing or invalid point count");
  }
  const int n = doc["points"].get<int>();
  const auto& alg = group->algebra();
  if (!doc.contains("grid") || !doc["grid"].is_array() ||
      static_cast<int>(doc["grid"].size()) != n) {
    throw ParseError("grid must have one row per point");
  }
  std::vector<Element> grid;
  grid.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    const json& row = doc["grid"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      std::ostringstream msg;
      msg << "grid row " << i + 1 << " must have " << n << " entries";
      throw ParseError(msg.str());
    }
    for (int j = 0; j < n; ++j) {
      grid.push_back(
          Element(alg, vector_from_json(row[j], alg->dim(), "grid entry")));
    }
  }
  FiniteAction act(group, n, std::move(grid));
  if (!act.valid(tol)) {
    json rj = act.report();
    std::ostringstream msg;
    msg << "action fails re-verification (max residual "
        << act.report().max_residual() << ")";
    throw ValidationError(msg.str(), rj.dump());
  }
  return act;
}

FiniteAction load_action(const std::string& path, const QuantumGroupPtr& group,
                         const Tolerances& tol) {
  return action_from_text(read_file(path), group, tol);
}

std::string digest(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return std::string(buf);
}

}  // namespace cqg
