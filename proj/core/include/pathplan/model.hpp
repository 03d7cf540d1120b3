#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pathplan {

enum class ErrorCode {
  NotChained,
  NotPathShaped,
  MissingSubFunction,
  UnknownFunction,
  EmptyCatalog,
  NotWeaklySmart,
  InvalidFunction,
  DuplicateName,
  MultiPivotLoop,
  SyntaxError,
  InverseFactRejected,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A relation name plus an orientation. r^-(x,y) is r(y,x).
struct Atom {
  std::string relation;
  bool inverse = false;

  Atom inverted() const { return Atom{relation, !inverse}; }
  std::string str() const;  // "r" or "r^-"

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

inline Atom invert(const Atom& a) { return a.inverted(); }

Atom parse_atom(std::string_view text);  // throws Error(SyntaxError)

using Skeleton = std::vector<Atom>;

// r1...rn -> rn^-...r1^-
Skeleton reverse(const Skeleton& s);
Skeleton concat(const Skeleton& a, const Skeleton& b);
Skeleton slice(const Skeleton& s, std::size_t from, std::size_t to);
std::string to_string(const Skeleton& s);  // "a.b^-.c", empty -> ""
Skeleton parse_skeleton(std::string_view text);

// number of adjacent pairs x.x^- (a loop turns around there)
int pivot_count(const Skeleton& s);

// q(x) <- r(a, x)
struct AtomicQuery {
  Atom relation;
  std::string constant = "a";
};

AtomicQuery parse_query(std::string_view relation, std::string constant = "a");

bool is_identifier(std::string_view s);

}  // namespace pathplan
