#include "kcsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace kcsp {

Nogood::Nogood(std::vector<Literal> pairs) : pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  auto same_var = [](const Literal& a, const Literal& b) { return a.var == b.var; };
  if (std::adjacent_find(pairs_.begin(), pairs_.end(), same_var) != pairs_.end()) {
    throw InstanceError("nogood mentions a variable twice");
  }
}

CspInstance::CspInstance(std::size_t num_vars, Value domain_size, std::vector<Nogood> nogoods)
    : num_vars_(num_vars), domain_size_(domain_size) {
  if (num_vars_ == 0) throw InstanceError("instance needs at least one variable");
  if (domain_size_ < 2) throw InstanceError("domain size must be at least 2");

  std::set<Nogood> seen;
  nogoods_.reserve(nogoods.size());
  for (auto& ng : nogoods) {
    for (const auto& [v, a] : ng.pairs()) {
      if (v < 1 || v > num_vars_) {
        throw InstanceError("variable " + std::to_string(v) + " outside 1.." +
                            std::to_string(num_vars_));
      }
      if (a < 0 || a >= domain_size_) {
        throw InstanceError("value " + std::to_string(a) + " outside 0.." +
                            std::to_string(domain_size_ - 1));
      }
    }
    if (seen.insert(ng).second) nogoods_.push_back(std::move(ng));
  }

  std::vector<std::uint32_t> counts(num_vars_ + 1, 0);
  for (const auto& ng : nogoods_) {
    k_max_ = std::max(k_max_, ng.arity());
    if (ng.empty()) has_empty_nogood_ = true;
    for (const auto& lit : ng.pairs()) ++counts[lit.var];
  }
  occ_offsets_.assign(num_vars_ + 2, 0);
  for (std::size_t v = 1; v <= num_vars_; ++v) occ_offsets_[v + 1] = occ_offsets_[v] + counts[v];
  occ_.resize(occ_offsets_[num_vars_ + 1]);
  auto cursor = occ_offsets_;
  for (std::uint32_t i = 0; i < nogoods_.size(); ++i) {
    for (const auto& lit : nogoods_[i].pairs()) occ_[cursor[lit.var]++] = i;
  }
}

std::span<const std::uint32_t> CspInstance::occurrences(Var v) const {
  return std::span(occ_).subspan(occ_offsets_[v], occ_offsets_[v + 1] - occ_offsets_[v]);
}

PartialAssignment::PartialAssignment(std::size_t num_vars, Value domain_size)
    : values_(num_vars, kUnassigned), domain_size_(domain_size) {}

PartialAssignment PartialAssignment::total(std::span<const Value> values, Value domain_size) {
  PartialAssignment pa(values.size(), domain_size);
  for (std::size_t i = 0; i < values.size(); ++i) pa.assign(static_cast<Var>(i + 1), values[i]);
  return pa;
}

void PartialAssignment::check_var(Var v) const {
  if (v < 1 || v > values_.size()) {
    throw InstanceError("variable " + std::to_string(v) + " outside assignment range");
  }
}

void PartialAssignment::assign(Var v, Value a) {
  check_var(v);
  if (a < 0 || a >= domain_size_) throw InstanceError("assigned value outside domain");
  auto& slot = values_[v - 1];
  if (slot == kUnassigned) ++assigned_;
  slot = a;
}

void PartialAssignment::unassign(Var v) {
  check_var(v);
  auto& slot = values_[v - 1];
  if (slot != kUnassigned) --assigned_;
  slot = kUnassigned;
}

NogoodStatus nogood_status(const Nogood& nogood, const PartialAssignment& pa) {
  std::vector<Var> open;
  for (const auto& [v, a] : nogood.pairs()) {
    if (!pa.is_assigned(v)) {
      open.push_back(v);
    } else if (pa[v] != a) {
      return status::Killed{};
    }
  }
  if (open.empty()) return status::Matched{};
  return status::Active{std::move(open)};
}

namespace {

bool fully_matched(const Nogood& ng, std::span<const Value> values) {
  return std::all_of(ng.pairs().begin(), ng.pairs().end(),
                     [&](const Literal& l) { return values[l.var - 1] == l.value; });
}

}  // namespace

bool is_satisfying(const CspInstance& inst, std::span<const Value> total) {
  if (total.size() != inst.num_vars()) throw InstanceError("assignment length differs from n");
  for (const auto& ng : inst.nogoods()) {
    if (fully_matched(ng, total)) return false;
  }
  return true;
}

bool is_satisfying(const CspInstance& inst, const PartialAssignment& pa) {
  if (!pa.is_total()) throw InstanceError("is_satisfying needs a total assignment");
  return is_satisfying(inst, pa.values());
}

void narrowed_domain(const CspInstance& inst, const PartialAssignment& pa, Var y,
                     std::vector<Value>& out) {
  if (pa.is_assigned(y)) {
    throw InstanceError("narrowed_domain: variable " + std::to_string(y) + " is assigned");
  }
  out.clear();
  if (inst.has_empty_nogood()) return;

  const Value d = inst.domain_size();
  out.resize(static_cast<std::size_t>(d));
  // out doubles as the forbidden-flag array until the final compaction.
  std::fill(out.begin(), out.end(), 0);
  for (std::uint32_t idx : inst.occurrences(y)) {
    const Nogood& ng = inst.nogoods()[idx];
    Value forbidden = kUnassigned;
    bool others_match = true;
    for (const auto& [v, a] : ng.pairs()) {
      if (v == y) {
        forbidden = a;
      } else if (pa[v] != a) {
        others_match = false;
        break;
      }
    }
    if (others_match) out[static_cast<std::size_t>(forbidden)] = 1;
  }
  std::size_t w = 0;
  for (Value a = 0; a < d; ++a) {
    if (out[static_cast<std::size_t>(a)] == 0) out[w++] = a;
  }
  out.resize(w);
}

std::vector<Value> narrowed_domain(const CspInstance& inst, const PartialAssignment& pa, Var y) {
  std::vector<Value> out;
  narrowed_domain(inst, pa, y, out);
  return out;
}

bool is_narrowly_chosen(const CspInstance& inst, const PartialAssignment& pa, Var y) {
  return narrowed_domain(inst, pa, y).size() < static_cast<std::size_t>(inst.domain_size());
}

// ---------------------------------------------------------------------------

namespace {

std::string kind_label(ParseError::Kind kind) {
  using K = ParseError::Kind;
  switch (kind) {
    case K::MalformedHeader: return "malformed header";
    case K::MissingHeader: return "missing header";
    case K::DuplicateHeader: return "duplicate header";
    case K::MalformedNogood: return "malformed nogood";
    case K::VariableOutOfRange: return "variable out of range";
    case K::ValueOutOfRange: return "value out of range";
    case K::RepeatedVariable: return "repeated variable in nogood";
    case K::UnknownLine: return "unknown line type";
  }
  return "parse error";
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_int(std::string_view tok, long long& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && p == tok.data() + tok.size();
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + kind_label(kind) +
                         (detail.empty() ? "" : ": " + detail)),
      kind_(kind),
      line_(line) {}

CspInstance parse_instance(std::string_view text) {
  using K = ParseError::Kind;
  bool have_header = false;
  long long n = 0;
  long long d = 0;
  std::vector<Nogood> nogoods;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;

    if (toks[0] == "p") {
      if (have_header) throw ParseError(K::DuplicateHeader, line_no, "");
      if (toks.size() != 4 || toks[1] != "csp" || !to_int(toks[2], n) || !to_int(toks[3], d) ||
          n < 1 || d < 2) {
        throw ParseError(K::MalformedHeader, line_no, "expected `p csp <n> <d>` with n >= 1, d >= 2");
      }
      have_header = true;
    } else if (toks[0] == "n") {
      if (!have_header) throw ParseError(K::MissingHeader, line_no, "nogood before `p csp` line");
      long long arity = 0;
      if (toks.size() < 2 || !to_int(toks[1], arity) || arity < 0 ||
          toks.size() != 2 + 2 * static_cast<std::size_t>(arity)) {
        throw ParseError(K::MalformedNogood, line_no, "arity does not match pair count");
      }
      std::vector<Literal> pairs;
      std::set<long long> vars;
      for (long long i = 0; i < arity; ++i) {
        long long v = 0;
        long long a = 0;
        if (!to_int(toks[2 + 2 * i], v) || !to_int(toks[3 + 2 * i], a)) {
          throw ParseError(K::MalformedNogood, line_no, "non-integer token");
        }
        if (v < 1 || v > n) throw ParseError(K::VariableOutOfRange, line_no, std::to_string(v));
        if (a < 0 || a >= d) throw ParseError(K::ValueOutOfRange, line_no, std::to_string(a));
        if (!vars.insert(v).second) {
          throw ParseError(K::RepeatedVariable, line_no, std::to_string(v));
        }
        pairs.push_back({static_cast<Var>(v), static_cast<Value>(a)});
      }
      nogoods.emplace_back(std::move(pairs));
    } else {
      throw ParseError(K::UnknownLine, line_no, std::string(toks[0]));
    }
  }
  if (!have_header) throw ParseError(K::MissingHeader, line_no, "no `p csp` line");
  return CspInstance(static_cast<std::size_t>(n), static_cast<Value>(d), std::move(nogoods));
}

CspInstance parse_instance(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const CspInstance& inst) {
  std::ostringstream out;
  out << "p csp " << inst.num_vars() << ' ' << inst.domain_size() << '\n';
  for (const auto& ng : inst.nogoods()) {
    out << "n " << ng.arity();
    for (const auto& [v, a] : ng.pairs()) out << ' ' << v << ' ' << a;
    out << '\n';
  }
  return out.str();
}

CspInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return parse_instance(in);
}

void save_instance(const CspInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path.string());
  out << serialize_instance(inst);
}

}  // namespace kcsp
