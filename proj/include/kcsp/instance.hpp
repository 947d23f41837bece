#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kcsp {

/// Variable index. Variables are numbered 1..n.
using Var = std::uint32_t;
/// Domain value. Values are numbered 0..d-1.
using Value = std::int32_t;

inline constexpr Value kUnassigned = -1;

struct Literal {
  Var var = 0;
  Value value = 0;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Thrown when an instance, nogood or assignment would violate its invariants.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A partial assignment that must never be fully matched. Pairs are kept
/// sorted by variable; a variable occurs at most once.
class Nogood {
 public:
  Nogood() = default;
  explicit Nogood(std::vector<Literal> pairs);
  Nogood(std::initializer_list<Literal> pairs) : Nogood(std::vector<Literal>(pairs)) {}

  std::span<const Literal> pairs() const { return pairs_; }
  std::size_t arity() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  friend bool operator==(const Nogood&, const Nogood&) = default;
  friend auto operator<=>(const Nogood&, const Nogood&) = default;

 private:
  std::vector<Literal> pairs_;
};

/// n variables over {0..d-1} and a deduplicated list of nogoods.
/// Immutable once built.
class CspInstance {
 public:
  CspInstance(std::size_t num_vars, Value domain_size, std::vector<Nogood> nogoods = {});

  std::size_t num_vars() const { return num_vars_; }
  Value domain_size() const { return domain_size_; }
  std::span<const Nogood> nogoods() const { return nogoods_; }
  std::size_t k_max() const { return k_max_; }
  bool has_empty_nogood() const { return has_empty_nogood_; }

  /// Indices (into nogoods()) of every nogood mentioning v.
  std::span<const std::uint32_t> occurrences(Var v) const;

  friend bool operator==(const CspInstance& a, const CspInstance& b) {
    return a.num_vars_ == b.num_vars_ && a.domain_size_ == b.domain_size_ &&
           a.nogoods_ == b.nogoods_;
  }

 private:
  std::size_t num_vars_;
  Value domain_size_;
  std::vector<Nogood> nogoods_;
  std::size_t k_max_ = 0;
  bool has_empty_nogood_ = false;
  std::vector<std::uint32_t> occ_offsets_;
  std::vector<std::uint32_t> occ_;
};

class PartialAssignment {
 public:
  PartialAssignment(std::size_t num_vars, Value domain_size);
  explicit PartialAssignment(const CspInstance& inst)
      : PartialAssignment(inst.num_vars(), inst.domain_size()) {}

  /// Total assignment from a value vector (element i is variable i+1).
  static PartialAssignment total(std::span<const Value> values, Value domain_size);

  std::size_t num_vars() const { return values_.size(); }
  Value domain_size() const { return domain_size_; }
  bool is_assigned(Var v) const { return values_[v - 1] != kUnassigned; }
  Value operator[](Var v) const { return values_[v - 1]; }
  std::size_t assigned_count() const { return assigned_; }
  bool is_total() const { return assigned_ == values_.size(); }
  std::span<const Value> values() const { return values_; }

  void assign(Var v, Value a);
  void unassign(Var v);

 private:
  void check_var(Var v) const;

  std::vector<Value> values_;
  Value domain_size_;
  std::size_t assigned_ = 0;
};

namespace status {
struct Killed {
  friend bool operator==(Killed, Killed) = default;
};
struct Matched {
  friend bool operator==(Matched, Matched) = default;
};
struct Active {
  std::vector<Var> unassigned;
  friend bool operator==(const Active&, const Active&) = default;
};
}  // namespace status

using NogoodStatus = std::variant<status::Killed, status::Matched, status::Active>;

NogoodStatus nogood_status(const Nogood& nogood, const PartialAssignment& pa);

/// Throws InstanceError if pa is not total.
bool is_satisfying(const CspInstance& inst, const PartialAssignment& pa);
bool is_satisfying(const CspInstance& inst, std::span<const Value> total);

/// {0..d-1} minus every value a such that some nogood containing (y:a) has
/// all of its other pairs assigned and matching. Ascending order.
std::vector<Value> narrowed_domain(const CspInstance& inst, const PartialAssignment& pa, Var y);
/// Same, reusing `out` to avoid allocation in tight loops.
void narrowed_domain(const CspInstance& inst, const PartialAssignment& pa, Var y,
                     std::vector<Value>& out);
bool is_narrowly_chosen(const CspInstance& inst, const PartialAssignment& pa, Var y);

// ---------------------------------------------------------------------------
// Instance file format

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedHeader,
    MissingHeader,
    DuplicateHeader,
    MalformedNogood,
    VariableOutOfRange,
    ValueOutOfRange,
    RepeatedVariable,
    UnknownLine,
  };

  ParseError(Kind kind, std::size_t line, const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

CspInstance parse_instance(std::string_view text);
CspInstance parse_instance(std::istream& in);
std::string serialize_instance(const CspInstance& inst);

CspInstance load_instance(const std::filesystem::path& path);
void save_instance(const CspInstance& inst, const std::filesystem::path& path);

}  // namespace kcsp
