#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coxcert/forms.hpp"
#include "coxcert/linalg.hpp"
#include "coxcert/matrix.hpp"

namespace coxcert {

// Right-angled Coxeter presentation: generators 1..count of order two, with
// [s_i, s_j] = 1 exactly for the listed pairs.
class RacgPresentation {
 public:
  RacgPresentation(std::size_t count, std::set<std::pair<std::size_t, std::size_t>> pairs)
      : count_(count), commuting_(std::move(pairs)) {
    for (const auto& [a, b] : commuting_)
      if (a < 1 || b < 1 || a > count_ || b > count_ || a == b)
        throw ContractViolation("RacgPresentation: bad commuting pair");
  }

  // Commuting pairs read off a form: (i,j) commutes iff the entry is 0.
  static RacgPresentation from_form(const QuadraticForm& q) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i <= q.dim(); ++i)
      for (std::size_t j = i + 1; j <= q.dim(); ++j)
        if (is_zero(q.entry(i, j))) pairs.insert({i, j});
    return RacgPresentation(q.dim(), std::move(pairs));
  }

  // The 2k-gon presentation: cyclically adjacent generators commute.
  static RacgPresentation cycle(std::size_t count) {
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i <= count; ++i) {
      std::size_t j = (i % count) + 1;
      pairs.insert({std::min(i, j), std::max(i, j)});
    }
    return RacgPresentation(count, std::move(pairs));
  }

  std::size_t generator_count() const { return count_; }
  const std::set<std::pair<std::size_t, std::size_t>>& commuting_pairs() const { return commuting_; }

  bool commutes(std::size_t a, std::size_t b) const {
    if (a == b) return true;
    return commuting_.count({std::min(a, b), std::max(a, b)}) > 0;
  }

  void check_letter(std::size_t g) const {
    if (g < 1 || g > count_)
      throw ContractViolation("word uses generator index " + std::to_string(g) +
                              " outside 1.." + std::to_string(count_));
  }

 private:
  std::size_t count_;
  std::set<std::pair<std::size_t, std::size_t>> commuting_;
};

using Word = std::vector<std::size_t>;  // 1-based generator indices

namespace detail {

// Append one letter to a reduced word, cancelling against an equal letter
// that can be shuffled adjacent through commuting letters. Keeps the word
// geodesic; this is the standard stack-based solution of the RACG word
// problem.
inline void insert_letter(Word& w, std::size_t g, const RacgPresentation& p) {
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] == g) {
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i));
      return;
    }
    if (!p.commutes(w[i], g)) break;
  }
  w.push_back(g);
}

}  // namespace detail

// Canonical reduced word: fully reduce, then repeatedly pull the smallest
// letter that commutes with everything before it to the front (ShortLex
// representative of the shuffle class). Two words are equal in the group iff
// their canonical forms are identical.
inline Word racg_normal_form(const Word& word, const RacgPresentation& p) {
  Word reduced;
  for (std::size_t g : word) {
    p.check_letter(g);
    detail::insert_letter(reduced, g, p);
  }
  Word canon;
  canon.reserve(reduced.size());
  while (!reduced.empty()) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < reduced.size(); ++i) {
      if (reduced[i] >= reduced[best]) continue;
      bool movable = true;
      for (std::size_t j = 0; j < i && movable; ++j) movable = p.commutes(reduced[j], reduced[i]);
      if (movable) best = i;
    }
    canon.push_back(reduced[best]);
    reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return canon;
}

inline bool racg_words_equal(const Word& a, const Word& b, const RacgPresentation& p) {
  return racg_normal_form(a, p) == racg_normal_form(b, p);
}

// Generators appearing in the canonical form; well defined since all reduced
// words of an element share the same support.
inline std::set<std::size_t> racg_support(const Word& word, const RacgPresentation& p) {
  Word nf = racg_normal_form(word, p);
  return std::set<std::size_t>(nf.begin(), nf.end());
}

// An exact matrix together with the word that produced it, so every stored
// element can be re-derived from named generators.
struct GroupElement {
  std::string name;
  std::vector<std::string> word;
  Matrix matrix;
};

inline std::string word_to_string(const std::vector<std::string>& word) {
  std::string s;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) s += " ";
    s += word[i];
  }
  return s;
}

struct ReflectionSystem {
  QuadraticForm form;
  std::vector<GroupElement> generators;  // names g1..gm
  RacgPresentation presentation;

  const Matrix& generator(std::size_t i) const {  // 1-based
    if (i < 1 || i > generators.size()) throw ContractViolation("generator index out of range");
    return generators[i - 1].matrix;
  }
};

// Reflection generators of the form's Coxeter system: generator i is the
// identity except in row i, which becomes e_i - 2 * (row i of Q). Requires a
// unit diagonal; each generator is then an involution preserving Q with
// determinant -1, which we verify rather than trust.
inline ReflectionSystem tits_reflections(const QuadraticForm& q) {
  if (!q.has_unit_diagonal())
    throw ContractViolation("tits_reflections: form must have a unit diagonal");
  const std::size_t d = q.dim();
  std::vector<GroupElement> gens;
  gens.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix g = Matrix::identity(d);
    for (std::size_t j = 0; j < d; ++j) g.at(i, j) -= 2 * q.matrix().at(i, j);
    std::string name = "g" + std::to_string(i + 1);
    gens.push_back({name, {name}, std::move(g)});
  }
  for (const auto& g : gens) {
    if (!q.preserved_by(g.matrix))
      throw CertificateFailure("tits_reflections: generator does not preserve the form");
    if (!(g.matrix * g.matrix).is_identity())
      throw CertificateFailure("tits_reflections: generator is not an involution");
    if (determinant(g.matrix) != -1)
      throw CertificateFailure("tits_reflections: generator determinant is not -1");
  }
  return ReflectionSystem{q, std::move(gens), RacgPresentation::from_form(q)};
}

// Connectivity of the Coxeter scheme: vertices are generators, edges the
// nonzero off-diagonal entries.
inline bool scheme_is_irreducible(const QuadraticForm& q) {
  const std::size_t d = q.dim();
  if (d == 0) return true;
  std::vector<bool> seen(d, false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < d; ++w)
      if (!seen[w] && w != v && !is_zero(q.matrix().at(v, w))) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
  }
  return count == d;
}

// Evaluates a word of named symbols against the system's generators plus any
// extra named matrices (e.g. a translation "t" and its inverse "t^-1").
inline GroupElement eval_word(const std::vector<std::string>& word, const ReflectionSystem& sys,
                              const std::map<std::string, Matrix>& extra = {}) {
  const std::size_t d = sys.form.dim();
  Matrix acc = Matrix::identity(d);
  for (const auto& sym : word) {
    const Matrix* m = nullptr;
    for (const auto& g : sys.generators)
      if (g.name == sym) {
        m = &g.matrix;
        break;
      }
    if (!m) {
      auto it = extra.find(sym);
      if (it == extra.end()) throw ContractViolation("eval_word: unknown symbol '" + sym + "'");
      m = &it->second;
    }
    acc = acc * *m;
  }
  return GroupElement{word_to_string(word), word, std::move(acc)};
}

}  // namespace coxcert
