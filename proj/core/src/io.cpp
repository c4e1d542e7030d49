#include "tik/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tik {

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

// Header tokens (first content line) and body tokens.
struct Tokens {
  std::vector<Token> header, body;
  std::size_t pos = 0;
  std::size_t last_line = 1;

  bool done() const { return pos == body.size(); }
  const Token& next(const char* what) {
    if (pos == body.size()) parse_fail(last_line, std::string("too few entries: expected ") + what);
    return body[pos++];
  }
};

Tokens tokenize(const std::string& text) {
  Tokens t;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    std::vector<Token>& dest = t.header.empty() ? t.header : t.body;
    for (std::string w; words >> w;) {
      dest.push_back({w, line});
      t.last_line = line;
    }
  }
  if (t.header.empty()) parse_fail(line ? line : 1, "empty input, expected a header");
  return t;
}

u64 to_uint(const Token& tok, const char* what) {
  u64 v = 0;
  const char* b = tok.text.data();
  const char* e = b + tok.text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e) parse_fail(tok.line, std::string("expected a non-negative integer for ") + what + ", got '" + tok.text + "'");
  return v;
}

struct Header {
  std::string keyword;
  std::vector<u64> params;
  std::vector<std::string> words;  // non-numeric extras, for witness tags
  std::size_t line = 1;
};

Header read_header(const Tokens& t) {
  Header h;
  h.line = t.header.front().line;
  h.keyword = t.header.front().text;
  for (std::size_t i = 1; i < t.header.size(); ++i) {
    if (h.keyword == "witness" && i == 1) {
      h.words.push_back(t.header[i].text);
      continue;
    }
    h.params.push_back(to_uint(t.header[i], "a header field"));
  }
  return h;
}

void expect_params(const Header& h, std::size_t count, const char* shape) {
  if (h.params.size() != count) parse_fail(h.line, "malformed header, expected `" + std::string(shape) + "`");
}

Field field_at(u64 p, std::size_t line) {
  if (p > UINT32_MAX) parse_fail(line, "modulus too large");
  try {
    return Field(static_cast<u32>(p));
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
}

u32 entry(Tokens& t, const Field& f) {
  const Token& tok = t.next("a field entry");
  const u64 v = to_uint(tok, "a field entry");
  if (v >= f.p()) parse_fail(tok.line, "entry " + tok.text + " is not below p = " + std::to_string(f.p()));
  return static_cast<u32>(v);
}

void expect_end(const Tokens& t) {
  if (!t.done()) parse_fail(t.body[t.pos].line, "too many entries, unexpected '" + t.body[t.pos].text + "'");
}

Mat read_matrix(Tokens& t, const Field& f, std::size_t rows, std::size_t cols) {
  Mat m(f, rows, cols);
  for (auto& x : m.data()) x = entry(t, f);
  return m;
}

std::size_t checked_size(u64 v, std::size_t line) {
  // Keeps allocations sane for hand-written files.
  if (v > (1u << 20)) parse_fail(line, "dimension " + std::to_string(v) + " too large");
  return static_cast<std::size_t>(v);
}

std::size_t checked_count(std::initializer_list<std::size_t> dims, std::size_t line) {
  u64 total = 1;
  for (std::size_t d : dims) {
    total *= d;
    if (total > (1u << 26)) parse_fail(line, "object too large");
  }
  return static_cast<std::size_t>(total);
}

Object parse_space(const Header& h, Tokens& t, SpaceKind kind) {
  expect_params(h, 3, "matspace n m p");
  const std::size_t n = checked_size(h.params[0], h.line), m = checked_size(h.params[1], h.line);
  const Field f = field_at(h.params[2], h.line);
  checked_count({n, n, m}, h.line);
  MatrixTuple slices;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t first = t.pos < t.body.size() ? t.body[t.pos].line : t.last_line;
    Mat s = read_matrix(t, f, n, n);
    if (kind == SpaceKind::Alternating && !is_alternating(s))
      parse_fail(first, "slice " + std::to_string(k + 1) + " is not alternating (nonzero diagonal or A != -A^t)");
    if (kind == SpaceKind::Symmetric && !is_symmetric(s))
      parse_fail(first, "slice " + std::to_string(k + 1) + " is not symmetric");
    slices.push_back(std::move(s));
  }
  return SpaceObject{kind, Tensor3::from_frontal(f, n, n, slices)};
}

Object parse_graph(const Header& h, Tokens& t, bool directed) {
  expect_params(h, 2, directed ? "digraph n e" : "graph n e");
  Graph g;
  g.directed = directed;
  g.n = checked_size(h.params[0], h.line);
  const std::size_t e = checked_size(h.params[1], h.line);
  for (std::size_t k = 0; k < e; ++k) {
    std::size_t ends[2];
    for (auto& x : ends) {
      const Token& tok = t.next("an edge endpoint");
      const u64 v = to_uint(tok, "an edge endpoint");
      if (v < 1 || v > g.n) parse_fail(tok.line, "vertex " + tok.text + " outside 1.." + std::to_string(g.n));
      x = static_cast<std::size_t>(v - 1);
    }
    g.edges.emplace_back(ends[0], ends[1]);
  }
  if (!directed && !g.simple()) parse_fail(h.line, "graph has a loop or a repeated edge");
  return g;
}

Object parse_form(const Header& h, Tokens& t) {
  expect_params(h, 3, "formd n d p");
  const std::size_t n = checked_size(h.params[0], h.line), d = checked_size(h.params[1], h.line);
  const Field f = field_at(h.params[2], h.line);
  if (n == 0 || n > 255 || d > 255) parse_fail(h.line, "formd needs 1 <= n and n, d <= 255");
  FormD form(f, n, d);
  std::vector<bool> seen(form.basis().size(), false);
  while (!t.done()) {
    Exponent e(n);
    std::size_t total = 0, line = t.body[t.pos].line;
    for (auto& x : e) {
      const u64 v = to_uint(t.next("an exponent"), "an exponent");
      if (v > d) parse_fail(line, "exponent above the degree");
      x = static_cast<std::uint8_t>(v);
      total += v;
    }
    if (total != d) parse_fail(line, "exponents sum to " + std::to_string(total) + ", not " + std::to_string(d));
    const u32 c = entry(t, f);
    const std::size_t idx = form.basis().index_of(e);
    if (seen[idx]) parse_fail(line, "monomial listed twice");
    seen[idx] = true;
    form.set(e, c);
  }
  return form;
}

Object parse_witness(const Header& h, Tokens& t) {
  if (h.words.size() != 1 || h.params.size() != 2) parse_fail(h.line, "malformed header, expected `witness tag count p`");
  Tag tag;
  try {
    tag = tag_from_name(h.words[0]);
  } catch (const Error&) {
    parse_fail(h.line, "unknown witness tag '" + h.words[0] + "'");
  }
  const std::size_t count = checked_size(h.params[0], h.line);
  const Field f = field_at(h.params[1], h.line);
  Witness w{tag, {}};
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t r = checked_size(to_uint(t.next("matrix rows"), "matrix rows"), t.last_line);
    const std::size_t c = checked_size(to_uint(t.next("matrix columns"), "matrix columns"), t.last_line);
    checked_count({r, c}, t.last_line);
    w.mats.push_back(read_matrix(t, f, r, c));
  }
  return w;
}

void put_row(std::ostringstream& out, const u32* row, std::size_t len) {
  for (std::size_t j = 0; j < len; ++j) out << (j ? " " : "") << row[j];
  out << '\n';
}

void put_matrix(std::ostringstream& out, const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) put_row(out, m.data().data() + i * m.cols(), m.cols());
}

}  // namespace

const char* space_keyword(SpaceKind k) {
  switch (k) {
    case SpaceKind::General: return "matspace";
    case SpaceKind::Alternating: return "altspace";
    case SpaceKind::Symmetric: return "symspace";
  }
  return "matspace";
}

bool operator==(const MatrixGroup& a, const MatrixGroup& b) { return a.field == b.field && a.n == b.n && a.gens == b.gens; }

Object parse_object(const std::string& text) {
  Tokens t = tokenize(text);
  const Header h = read_header(t);
  Object out;
  if (h.keyword == "tensor3") {
    expect_params(h, 4, "tensor3 l n m p");
    const std::size_t l = checked_size(h.params[0], h.line), n = checked_size(h.params[1], h.line),
                      m = checked_size(h.params[2], h.line);
    checked_count({l, n, m}, h.line);
    Tensor3 x(field_at(h.params[3], h.line), l, n, m);
    for (auto& v : x.data()) v = entry(t, x.field());
    out = std::move(x);
  } else if (h.keyword == "tensord") {
    if (h.params.empty() || h.params[0] + 2 != h.params.size()) parse_fail(h.line, "malformed header, expected `tensord d n1 .. nd p`");
    std::vector<std::size_t> dims;
    u64 total = 1;
    for (std::size_t i = 1; i + 1 < h.params.size(); ++i) {
      dims.push_back(checked_size(h.params[i], h.line));
      total *= dims.back();
      if (total > (1u << 26)) parse_fail(h.line, "object too large");
    }
    TensorD x(field_at(h.params.back(), h.line), dims);
    for (auto& v : x.data()) v = entry(t, x.field());
    out = std::move(x);
  } else if (h.keyword == "matspace") {
    out = parse_space(h, t, SpaceKind::General);
  } else if (h.keyword == "altspace") {
    out = parse_space(h, t, SpaceKind::Alternating);
  } else if (h.keyword == "symspace") {
    out = parse_space(h, t, SpaceKind::Symmetric);
  } else if (h.keyword == "code") {
    expect_params(h, 3, "code d n p");
    const std::size_t d = checked_size(h.params[0], h.line), n = checked_size(h.params[1], h.line);
    checked_count({d, n}, h.line);
    out = read_matrix(t, field_at(h.params[2], h.line), d, n);
  } else if (h.keyword == "graph" || h.keyword == "digraph") {
    out = parse_graph(h, t, h.keyword == "digraph");
  } else if (h.keyword == "algebra") {
    expect_params(h, 2, "algebra n p");
    const std::size_t n = checked_size(h.params[0], h.line);
    checked_count({n, n, n}, h.line);
    Tensor3 sc(field_at(h.params[1], h.line), n, n, n);
    for (auto& v : sc.data()) v = entry(t, sc.field());
    out = AlgebraSC(std::move(sc));
  } else if (h.keyword == "formd") {
    out = parse_form(h, t);
  } else if (h.keyword == "group") {
    expect_params(h, 3, "group n m p");
    const std::size_t n = checked_size(h.params[0], h.line), m = checked_size(h.params[1], h.line);
    checked_count({n, n, m}, h.line);
    MatrixGroup g{field_at(h.params[2], h.line), n, {}};
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t first = t.pos < t.body.size() ? t.body[t.pos].line : t.last_line;
      Mat s = read_matrix(t, g.field, n, n);
      if (!invertible(s)) parse_fail(first, "generator " + std::to_string(k + 1) + " is singular");
      g.gens.push_back(std::move(s));
    }
    out = std::move(g);
  } else if (h.keyword == "witness") {
    out = parse_witness(h, t);
  } else {
    parse_fail(h.line, "unknown object type '" + h.keyword + "'");
  }
  expect_end(t);
  return out;
}

std::string emit_object(const Object& obj) {
  std::ostringstream out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Tensor3>) {
          out << "tensor3 " << x.dim(0) << ' ' << x.dim(1) << ' ' << x.dim(2) << ' ' << x.field().p() << '\n';
          for (std::size_t i = 0; i < x.dim(0) * x.dim(1); ++i) put_row(out, x.data().data() + i * x.dim(2), x.dim(2));
        } else if constexpr (std::is_same_v<T, TensorD>) {
          out << "tensord " << x.order();
          for (std::size_t d : x.dims()) out << ' ' << d;
          out << ' ' << x.p() << '\n';
          const std::size_t last = x.order() ? x.dims().back() : 1;
          for (std::size_t i = 0; last && i < x.size() / last; ++i) put_row(out, x.data().data() + i * last, last);
        } else if constexpr (std::is_same_v<T, SpaceObject>) {
          const Tensor3& t = x.slices;
          out << space_keyword(x.kind) << ' ' << t.dim(0) << ' ' << t.dim(2) << ' ' << t.field().p() << '\n';
          const MatrixTuple s = t.frontal();
          for (std::size_t k = 0; k < s.size(); ++k) {
            out << "# slice " << k + 1 << '\n';
            put_matrix(out, s[k]);
          }
        } else if constexpr (std::is_same_v<T, Mat>) {
          out << "code " << x.rows() << ' ' << x.cols() << ' ' << x.p() << '\n';
          put_matrix(out, x);
        } else if constexpr (std::is_same_v<T, Graph>) {
          out << (x.directed ? "digraph " : "graph ") << x.n << ' ' << x.edges.size() << '\n';
          for (const auto& [u, v] : x.edges) out << u + 1 << ' ' << v + 1 << '\n';
        } else if constexpr (std::is_same_v<T, AlgebraSC>) {
          const std::size_t n = x.dim();
          out << "algebra " << n << ' ' << x.field().p() << '\n';
          for (std::size_t i = 0; i < n * n; ++i) put_row(out, x.sc().data().data() + i * n, n);
        } else if constexpr (std::is_same_v<T, FormD>) {
          out << "formd " << x.vars() << ' ' << x.degree() << ' ' << x.p() << '\n';
          for (std::size_t i = 0; i < x.basis().size(); ++i) {
            if (!x.coeffs()[i]) continue;
            for (auto e : x.basis().at(i)) out << unsigned(e) << ' ';
            out << x.coeffs()[i] << '\n';
          }
        } else if constexpr (std::is_same_v<T, MatrixGroup>) {
          out << "group " << x.n << ' ' << x.gens.size() << ' ' << x.field.p() << '\n';
          for (std::size_t k = 0; k < x.gens.size(); ++k) {
            out << "# generator " << k + 1 << '\n';
            put_matrix(out, x.gens[k]);
          }
        } else if constexpr (std::is_same_v<T, Witness>) {
          require(!x.mats.empty(), ErrorKind::Dimension, "cannot write a witness without matrices");
          out << "witness " << tag_name(x.tag) << ' ' << x.mats.size() << ' ' << x.mats[0].p() << '\n';
          for (const Mat& m : x.mats) {
            out << m.rows() << ' ' << m.cols() << '\n';
            put_matrix(out, m);
          }
        }
      },
      obj);
  return out.str();
}

Object read_object_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorKind::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_object(buf.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) fail(ErrorKind::Parse, path + ", " + e.detail());
    throw;
  }
}

void write_object_file(const std::string& path, const Object& obj) {
  std::ofstream out(path, std::ios::binary);
  require(bool(out), ErrorKind::Parse, "cannot write " + path);
  out << emit_object(obj);
  require(bool(out), ErrorKind::Parse, "write failed for " + path);
}

namespace {

const char* object_name(const Object& obj) {
  static const char* names[] = {"tensor3", "tensord", "matrix space", "code", "graph", "algebra", "formd", "group", "witness"};
  return names[obj.index()];
}

template <class T>
const T& want(const Object& obj, Problem problem) {
  if (const T* x = std::get_if<T>(&obj)) return *x;
  fail(ErrorKind::Parse, std::string("problem ") + problem_name(problem) + " cannot use a " + object_name(obj) + " file");
}

}  // namespace

Instance instance_from_object(Problem problem, const Object& obj) {
  switch (problem) {
    case Problem::TI3:
    case Problem::TrilinearEq:
      return want<Tensor3>(obj, problem);
    case Problem::TId:
      if (const auto* t3 = std::get_if<Tensor3>(&obj)) return TensorD::from_tensor3(*t3);
      return want<TensorD>(obj, problem);
    case Problem::Isometry:
    case Problem::MonomialIsometry:
    case Problem::PseudoIsometry:
    case Problem::Conjugacy:
      return want<SpaceObject>(obj, problem).slices;
    case Problem::AlgebraIso: return want<AlgebraSC>(obj, problem);
    case Problem::FormEq: return want<FormD>(obj, problem);
    case Problem::MonCodeEq: return want<Mat>(obj, problem);
    case Problem::GraphIso:
    case Problem::DigraphIso: {
      const Graph& g = want<Graph>(obj, problem);
      if (g.directed != (problem == Problem::DigraphIso))
        fail(ErrorKind::Parse, std::string("problem ") + problem_name(problem) + (g.directed ? " needs an undirected graph" : " needs a digraph"));
      return g;
    }
  }
  fail(ErrorKind::Parse, "unknown problem");
}

Object object_from_instance(Problem problem, const Instance& x) {
  switch (problem) {
    case Problem::Isometry:
    case Problem::MonomialIsometry:
    case Problem::PseudoIsometry:
    case Problem::Conjugacy: {
      const Tensor3& t = std::get<Tensor3>(x);
      const MatrixTuple s = t.frontal();
      const SpaceKind kind = tuple_alternating(s) ? SpaceKind::Alternating
                             : tuple_symmetric(s) ? SpaceKind::Symmetric
                                                  : SpaceKind::General;
      return SpaceObject{kind, t};
    }
    default: break;
  }
  return std::visit([](const auto& v) -> Object { return v; }, x);
}

}  // namespace tik
