#include "igeom/bodyspec.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace ig {

namespace {

struct Block {
  int first_line = 0;
  std::map<std::string, std::pair<int, std::vector<std::string>>> fields;  // key -> (line, values)
  std::vector<Block> parts;
};

Block parse_block(std::istream& in, int& line_no, bool nested) {
  Block b;
  b.first_line = line_no + 1;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "begin_part") {
      b.parts.push_back(parse_block(in, line_no, true));
      continue;
    }
    if (key == "end_part") {
      if (!nested) throw BodySpecError(line_no, "end_part without begin_part");
      return b;
    }
    std::vector<std::string> values;
    std::string tok;
    while (ls >> tok) values.push_back(tok);
    if (values.empty()) throw BodySpecError(line_no, "field '" + key + "' has no value");
    if (b.fields.count(key)) throw BodySpecError(line_no, "duplicate field '" + key + "'");
    b.fields[key] = {line_no, values};
  }
  if (nested) throw BodySpecError(line_no, "unterminated begin_part");
  return b;
}

double to_number(const std::string& s, int line) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw BodySpecError(line, "expected a number, got '" + s + "'");
  }
  if (pos != s.size()) throw BodySpecError(line, "trailing characters in number '" + s + "'");
  return v;
}

const std::pair<int, std::vector<std::string>>& require(const Block& b, const std::string& key) {
  const auto it = b.fields.find(key);
  if (it == b.fields.end())
    throw BodySpecError(b.first_line, "missing required field '" + key + "'");
  return it->second;
}

Eigen::VectorXd numbers(const std::pair<int, std::vector<std::string>>& field) {
  Eigen::VectorXd v(field.second.size());
  for (std::size_t i = 0; i < field.second.size(); ++i)
    v(i) = to_number(field.second[i], field.first);
  return v;
}

StarBody build(const Block& b);

StarBody build_single_part(const Block& b, const char* kind) {
  if (b.parts.size() != 1)
    throw BodySpecError(b.first_line, std::string(kind) + " requires exactly one part");
  return build(b.parts[0]);
}

StarBody build(const Block& b) {
  const std::string kind = require(b, "kind").second.at(0);
  const int dim = static_cast<int>(to_number(require(b, "dim").second.at(0),
                                             require(b, "dim").first));
  if (dim < 1) throw BodySpecError(b.first_line, "dim must be >= 1");

  if (kind == "ball") {
    double radius = 1.0;
    if (b.fields.count("radius")) radius = numbers(b.fields.at("radius"))(0);
    if (radius <= 0) throw BodySpecError(b.first_line, "ball radius must be positive");
    return StarBody::ball(dim, radius);
  }
  if (kind == "ellipsoid") {
    if (b.fields.count("axes")) {
      const Eigen::VectorXd axes = numbers(b.fields.at("axes"));
      if (axes.size() != dim)
        throw BodySpecError(b.fields.at("axes").first, "axes length must equal dim");
      if ((axes.array() <= 0).any())
        throw BodySpecError(b.fields.at("axes").first, "axes must be positive");
      return StarBody::ellipsoid_axes(axes);
    }
    if (b.fields.count("matrix")) {
      const Eigen::VectorXd m = numbers(b.fields.at("matrix"));
      if (m.size() != static_cast<long>(dim) * dim)
        throw BodySpecError(b.fields.at("matrix").first, "matrix needs dim*dim entries");
      Eigen::MatrixXd a(dim, dim);
      for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) a(r, c) = m(r * dim + c);
      return StarBody::ellipsoid(a);
    }
    throw BodySpecError(b.first_line, "ellipsoid requires 'axes' or 'matrix'");
  }
  if (kind == "lp_ball") {
    const double p = to_number(require(b, "p").second.at(0), require(b, "p").first);
    if (!(p > 0)) throw BodySpecError(require(b, "p").first, "p must be positive or inf");
    Eigen::VectorXd axes;
    if (b.fields.count("axes")) {
      axes = numbers(b.fields.at("axes"));
      if (axes.size() != dim)
        throw BodySpecError(b.fields.at("axes").first, "axes length must equal dim");
    }
    return StarBody::lp_ball(dim, p, axes);
  }
  if (kind == "k_radial_sum") {
    const int k = static_cast<int>(to_number(require(b, "k").second.at(0), require(b, "k").first));
    if (b.parts.size() < 2)
      throw BodySpecError(b.first_line, "k_radial_sum requires at least two parts");
    StarBody acc = build(b.parts[0]);
    for (std::size_t i = 1; i < b.parts.size(); ++i) acc = k_radial_sum(acc, build(b.parts[i]), k);
    return acc;
  }
  if (kind == "radial_product") {
    const int k1 = static_cast<int>(to_number(require(b, "k1").second.at(0),
                                              require(b, "k1").first));
    const int k2 = static_cast<int>(to_number(require(b, "k2").second.at(0),
                                              require(b, "k2").first));
    if (b.parts.size() != 2)
      throw BodySpecError(b.first_line, "radial_product requires exactly two parts");
    return radial_product_power(build(b.parts[0]), k1, build(b.parts[1]), k2);
  }
  if (kind == "linear_image") {
    const Eigen::VectorXd m = numbers(require(b, "matrix"));
    if (m.size() != static_cast<long>(dim) * dim)
      throw BodySpecError(require(b, "matrix").first, "matrix needs dim*dim entries");
    Eigen::MatrixXd t(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) t(r, c) = m(r * dim + c);
    return linear_image(build_single_part(b, "linear_image"), t);
  }
  if (kind == "section") {
    const Eigen::VectorXd f = numbers(require(b, "frame"));
    if (f.size() % dim != 0)
      throw BodySpecError(require(b, "frame").first, "frame needs m*dim entries");
    const int m = static_cast<int>(f.size() / dim);
    Eigen::MatrixXd frame(dim, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < dim; ++c) frame(c, r) = f(r * dim + c);
    if (!orthonormalize(frame))
      throw BodySpecError(require(b, "frame").first, "frame rows are dependent");
    const StarBody inner = build_single_part(b, "section");
    if (inner.ambient_dim() != dim)
      throw BodySpecError(b.first_line, "section part must live in the ambient dim");
    return central_section(inner, Subspace(dim, frame));
  }
  throw BodySpecError(b.first_line, "unknown kind '" + kind + "'");
}

}  // namespace

StarBody load_body_spec(std::istream& in) {
  int line_no = 0;
  const Block root = parse_block(in, line_no, false);
  if (root.fields.empty() && root.parts.empty()) throw BodySpecError(1, "empty specification");
  return build(root);
}

StarBody load_body_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open body spec file: " + path);
  return load_body_spec(in);
}

}  // namespace ig
