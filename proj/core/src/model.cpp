#include "pathplan/model.hpp"

#include <cctype>

namespace pathplan {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotChained: return "NotChained";
    case ErrorCode::NotPathShaped: return "NotPathShaped";
    case ErrorCode::MissingSubFunction: return "MissingSubFunction";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::EmptyCatalog: return "EmptyCatalog";
    case ErrorCode::NotWeaklySmart: return "NotWeaklySmart";
    case ErrorCode::InvalidFunction: return "InvalidFunction";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::MultiPivotLoop: return "MultiPivotLoop";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::InverseFactRejected: return "InverseFactRejected";
  }
  return "?";
}

std::string Atom::str() const { return inverse ? relation + "^-" : relation; }

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto first = static_cast<unsigned char>(s[0]);
  if (!std::isalpha(first) && s[0] != '_') return false;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_') return false;
  }
  return true;
}

Atom parse_atom(std::string_view text) {
  Atom a;
  if (text.size() > 2 && text.substr(text.size() - 2) == "^-") {
    a.inverse = true;
    text.remove_suffix(2);
  }
  if (!is_identifier(text))
    throw Error(ErrorCode::SyntaxError, "bad relation atom '" + std::string(text) + "'");
  a.relation = std::string(text);
  return a;
}

Skeleton reverse(const Skeleton& s) {
  Skeleton out;
  out.reserve(s.size());
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(it->inverted());
  return out;
}

Skeleton concat(const Skeleton& a, const Skeleton& b) {
  Skeleton out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Skeleton slice(const Skeleton& s, std::size_t from, std::size_t to) {
  if (to > s.size()) to = s.size();
  if (from >= to) return {};
  return Skeleton(s.begin() + static_cast<long>(from), s.begin() + static_cast<long>(to));
}

std::string to_string(const Skeleton& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += '.';
    out += s[i].str();
  }
  return out;
}

Skeleton parse_skeleton(std::string_view text) {
  Skeleton out;
  std::size_t i = 0;
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  if (trim(text).empty()) return out;
  while (i <= text.size()) {
    auto dot = text.find('.', i);
    if (dot == std::string_view::npos) dot = text.size();
    out.push_back(parse_atom(trim(text.substr(i, dot - i))));
    i = dot + 1;
  }
  return out;
}

int pivot_count(const Skeleton& s) {
  int n = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i + 1] == s[i].inverted()) ++n;
  return n;
}

AtomicQuery parse_query(std::string_view relation, std::string constant) {
  AtomicQuery q;
  q.relation = parse_atom(relation);
  q.constant = std::move(constant);
  return q;
}

}  // namespace pathplan
