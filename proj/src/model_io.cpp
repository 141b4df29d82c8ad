#include "ksc/model_io.hpp"

#include "ksc/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ksc {
namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_rows(std::ostream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt17(m(i, j));
    out << '\n';
  }
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line(const std::string& section) {
    std::string s;
    while (std::getline(in_, s)) {
      ++line_no_;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (!s.empty()) return s;
    }
    fail(ErrorKind::Format, "model truncated in section " + section);
  }

  std::string value(const std::string& key) {
    const std::string s = line(key);
    std::istringstream ss(s);
    std::string k, v;
    ss >> k >> v;
    if (k != key || v.empty())
      fail(ErrorKind::Format, "model line " + std::to_string(line_no_) + ": expected '" +
                                  key + " <value>'");
    return v;
  }

  template <typename T = long>
  T integer(const std::string& key) {
    const std::string v = value(key);
    T out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      fail(ErrorKind::Format, "model: field " + key + " is not an integer");
    return out;
  }

  void header(const std::string& name) {
    if (line(name) != name)
      fail(ErrorKind::Format, "model line " + std::to_string(line_no_) +
                                  ": expected section " + name);
  }

  Matrix rows(const std::string& section, Index n, Index m) {
    Matrix out(n, m);
    for (Index i = 0; i < n; ++i) {
      const std::string s = line(section);
      std::istringstream ss(s);
      for (Index j = 0; j < m; ++j) {
        std::string tok;
        if (!(ss >> tok))
          fail(ErrorKind::Format, "model section " + section + ": short row at line " +
                                      std::to_string(line_no_));
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
          fail(ErrorKind::Format, "model section " + section +
                                      ": bad number '" + tok + "' at line " +
                                      std::to_string(line_no_));
        out(i, j) = v;
      }
      std::string extra;
      if (ss >> extra)
        fail(ErrorKind::Format, "model section " + section + ": long row at line " +
                                    std::to_string(line_no_));
    }
    return out;
  }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

}  // namespace

void save_model(std::ostream& out, const SparseKscModel& model) {
  model.validate();
  out << "KSC-MODEL 1\n";
  out << "kernel " << to_string(model.kernel.kind) << '\n';
  out << "param " << fmt17(model.kernel.param) << '\n';
  out << "K " << model.k_clusters << '\n';
  out << "encoding " << to_string(model.encoding) << '\n';
  out << "bias_variant " << to_string(model.bias_variant) << '\n';
  out << "R " << model.reduced_size() << '\n';
  out << "d " << model.dim() << '\n';
  out << "N_tr " << model.n_train << '\n';
  out << "seed " << model.seed << '\n';
  out << "REDUCED\n";
  write_rows(out, model.reduced_points);
  out << "XI\n";
  write_rows(out, model.xi);
  out << "BIAS\n";
  write_rows(out, model.bias.transpose());
  out << (model.encoding == Encoding::SignCodebook ? "CODEBOOK\n" : "PROTOTYPES\n");
  write_rows(out, model.prototypes);
}

void save_model(const std::string& path, const SparseKscModel& model) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
  save_model(out, model);
  if (!out) fail(ErrorKind::Io, "write error on '" + path + "'");
}

SparseKscModel load_model(std::istream& in) {
  Reader rd(in);
  const std::string head = rd.line("header");
  if (head.rfind("KSC-MODEL ", 0) != 0)
    fail(ErrorKind::Format, "not a KSC model file (missing 'KSC-MODEL' header)");
  if (head != "KSC-MODEL 1")
    fail(ErrorKind::Format, "unsupported model version '" + head.substr(10) + "'");

  SparseKscModel m;
  m.kernel.kind = parse_kernel_kind(rd.value("kernel"));
  {
    const std::string v = rd.value("param");
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), m.kernel.param);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(m.kernel.param))
      fail(ErrorKind::Format, "model: bad kernel parameter '" + v + "'");
  }
  m.k_clusters = rd.integer("K");
  m.encoding = parse_encoding(rd.value("encoding"));
  m.bias_variant = parse_bias_variant(rd.value("bias_variant"));
  const Index r = rd.integer("R");
  const Index d = rd.integer("d");
  m.n_train = rd.integer("N_tr");
  m.seed = rd.integer<std::uint64_t>("seed");
  if (m.k_clusters < 2 || r < 1 || d < 1)
    fail(ErrorKind::Format, "model: K, R and d must be positive (K >= 2)");

  const Index cols = m.k_clusters - 1;
  rd.header("REDUCED");
  m.reduced_points = rd.rows("REDUCED", r, d);
  rd.header("XI");
  m.xi = rd.rows("XI", r, cols);
  rd.header("BIAS");
  m.bias = rd.rows("BIAS", 1, cols).row(0).transpose();
  const std::string table = m.encoding == Encoding::SignCodebook ? "CODEBOOK" : "PROTOTYPES";
  rd.header(table);
  m.prototypes = rd.rows(table, m.k_clusters, cols);
  m.validate();
  return m;
}

SparseKscModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open '" + path + "' for reading");
  return load_model(in);
}

}  // namespace ksc
