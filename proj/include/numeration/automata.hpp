#ifndef NUMERATION_AUTOMATA_HPP
#define NUMERATION_AUTOMATA_HPP

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "numsys.hpp"
#include "realbase.hpp"

namespace numeration {

/// Partial deterministic automaton over digits; a missing edge rejects.
class Dfa {
public:
  using State = std::size_t;

  Dfa() : Dfa(1, 0) {}
  Dfa(std::size_t states, State initial) : edges_(states), finals_(states, false), initial_(initial) {
    if (initial >= states) throw DomainError("initial state out of range");
  }

  std::size_t num_states() const { return edges_.size(); }
  State initial() const { return initial_; }
  bool is_final(State q) const { return finals_.at(q); }
  void set_final(State q, bool f = true) { finals_.at(q) = f; }
  void set_all_final() { std::fill(finals_.begin(), finals_.end(), true); }

  State add_state(bool final = false) {
    edges_.emplace_back();
    finals_.push_back(final);
    return edges_.size() - 1;
  }

  void add_edge(State from, Digit label, State to) {
    if (from >= num_states() || to >= num_states()) throw DomainError("edge endpoint out of range");
    auto [it, inserted] = edges_[from].emplace(label, to);
    if (!inserted && it->second != to)
      throw DomainError("nondeterministic edge from state " + std::to_string(from) + " on " + std::to_string(label));
  }

  std::optional<State> next(State q, Digit label) const {
    auto it = edges_.at(q).find(label);
    if (it == edges_[q].end()) return std::nullopt;
    return it->second;
  }

  const std::map<Digit, State>& edges(State q) const { return edges_.at(q); }

  std::size_t num_edges() const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += e.size();
    return n;
  }

  Digit max_label() const {
    Digit m = 0;
    for (const auto& e : edges_)
      if (!e.empty()) m = std::max(m, e.rbegin()->first);
    return m;
  }

  /// State reached on w, if every edge exists.
  std::optional<State> run(std::span<const Digit> w) const {
    State q = initial_;
    for (Digit c : w) {
      auto n = next(q, c);
      if (!n) return std::nullopt;
      q = *n;
    }
    return q;
  }

  bool accepts(std::span<const Digit> w) const {
    auto q = run(w);
    return q && finals_[*q];
  }

  /// Reachable part renumbered breadth-first from the initial state,
  /// exploring edges in increasing label order. Two automata are
  /// isomorphic iff their canonical forms are equal.
  Dfa canonical() const {
    std::vector<std::optional<State>> id(num_states());
    std::vector<State> order{initial_};
    id[initial_] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (auto [c, t] : edges_[order[k]])
        if (!id[t]) {
          id[t] = order.size();
          order.push_back(t);
        }
    Dfa out(order.size(), 0);
    for (std::size_t k = 0; k < order.size(); ++k) {
      out.finals_[k] = finals_[order[k]];
      for (auto [c, t] : edges_[order[k]]) out.edges_[k][c] = *id[t];
    }
    return out;
  }

  bool operator==(const Dfa&) const = default;

private:
  std::vector<std::map<Digit, State>> edges_;
  std::vector<bool> finals_;
  State initial_ = 0;
};

inline bool accepts(const Dfa& d, std::span<const Digit> w) { return d.accepts(w); }

inline bool isomorphic(const Dfa& a, const Dfa& b) { return a.canonical() == b.canonical(); }

/// Language-equivalent minimal automaton (Moore partition refinement on the
/// completed automaton; the sink and other dead classes are dropped again).
inline Dfa minimize(const Dfa& input) {
  const Dfa d = input.canonical();
  const std::size_t n = d.num_states();
  const std::size_t sink = n;
  const Digit amax = d.max_label();
  auto target = [&](std::size_t q, Digit c) -> std::size_t {
    if (q == sink) return sink;
    auto t = d.next(q, c);
    return t ? *t : sink;
  };
  std::vector<std::size_t> cls(n + 1);
  for (std::size_t q = 0; q < n; ++q) cls[q] = d.is_final(q) ? 1 : 0;
  cls[sink] = 0;
  std::size_t num_classes = 0;
  while (true) {
    std::map<std::vector<std::size_t>, std::size_t> sig_id;
    std::vector<std::size_t> next(n + 1);
    for (std::size_t q = 0; q <= n; ++q) {
      std::vector<std::size_t> sig{cls[q]};
      for (Digit c = 0; c <= amax; ++c) sig.push_back(cls[target(q, c)]);
      auto [it, _] = sig_id.emplace(std::move(sig), sig_id.size());
      next[q] = it->second;
    }
    const bool stable = sig_id.size() == num_classes;
    num_classes = sig_id.size();
    cls = std::move(next);
    if (stable) break;
  }
  // A class is live if some final class is reachable from it.
  std::vector<std::vector<std::size_t>> rev(num_classes);
  std::vector<bool> fin(num_classes, false);
  for (std::size_t q = 0; q <= n; ++q) {
    if (q < n && d.is_final(q)) fin[cls[q]] = true;
    for (Digit c = 0; c <= amax; ++c) rev[cls[target(q, c)]].push_back(cls[q]);
  }
  std::vector<bool> live(fin);
  std::queue<std::size_t> work;
  for (std::size_t k = 0; k < num_classes; ++k)
    if (live[k]) work.push(k);
  while (!work.empty()) {
    auto k = work.front();
    work.pop();
    for (auto p : rev[k])
      if (!live[p]) {
        live[p] = true;
        work.push(p);
      }
  }
  const std::size_t start = cls[d.initial()];
  if (!live[start]) return Dfa(1, 0);
  Dfa q(num_classes, start);
  for (std::size_t s = 0; s < n; ++s) {
    if (!live[cls[s]]) continue;
    q.set_final(cls[s], d.is_final(s));
    for (auto [c, t] : d.edges(s))
      if (live[cls[t]]) q.add_edge(cls[s], c, cls[t]);
  }
  return q.canonical();
}

/// Number of accepted words of length i, from the i-th power of the
/// edge-count matrix.
inline BigInt count_accepted(const Dfa& d, std::size_t i) {
  using Matrix = std::vector<std::vector<BigInt>>;
  const std::size_t n = d.num_states();
  auto mul = [n](const Matrix& a, const Matrix& b) {
    Matrix c(n, std::vector<BigInt>(n));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k) {
        if (a[r][k] == 0) continue;
        for (std::size_t col = 0; col < n; ++col) c[r][col] += a[r][k] * b[k][col];
      }
    return c;
  };
  Matrix m(n, std::vector<BigInt>(n)), acc(n, std::vector<BigInt>(n));
  for (std::size_t q = 0; q < n; ++q) {
    acc[q][q] = 1;
    for (auto [c, t] : d.edges(q)) m[q][t] += 1;
  }
  for (std::size_t e = i; e; e >>= 1) {
    if (e & 1) acc = mul(acc, m);
    if (e > 1) m = mul(m, m);
  }
  BigInt total = 0;
  for (std::size_t q = 0; q < n; ++q)
    if (d.is_final(q)) total += acc[d.initial()][q];
  return total;
}

/// Automaton for Fac(S_β) built on d*_β(1) = d_1...d_m (d_{m+1}...d_{m+n})^ω:
/// states q_1..q_{m+n} (all final, q_1 initial), q_i -d_i-> q_{i+1},
/// q_{m+n} -d_{m+n}-> q_{m+1}, and q_i -c-> q_1 for every c < d_i.
inline Dfa shift_dfa_from_quasi_greedy(const EPWord& dstar) {
  const std::size_t m = dstar.preperiod().size(), n = dstar.period().size();
  Dfa d(m + n, 0);
  d.set_all_final();
  for (std::size_t i = 0; i < m + n; ++i) {
    const Digit di = dstar.at(i);
    d.add_edge(i, di, i + 1 < m + n ? i + 1 : m);
    for (Digit c = 0; c < di; ++c) d.add_edge(i, c, 0);
  }
  return d;
}

struct ShiftAutomaton {
  Dfa dfa;
  /// Non-canonical requested for a base that is not simple Parry.
  bool variants_coincide = false;
};

/// Automaton accepting Fac(S_β) (canonical) or Fac(S'_β) (non-canonical).
/// The non-canonical one adds a final state q' with a t_n-edge from the
/// state reached on t_1...t_{n-1} and a 0-loop.
inline ShiftAutomaton build_shift_dfa(const RealBase& base, Variant variant, std::size_t depth = kDefaultDepth) {
  const EPWord d = base.greedy_word(depth);
  const EPWord dstar = base.quasi_greedy_word(depth);
  ShiftAutomaton out{shift_dfa_from_quasi_greedy(dstar), false};
  if (variant == Variant::canonical) return out;
  if (!d.is_finite()) {
    out.variants_coincide = true;
    return out;
  }
  const DigitWord& t = d.preperiod();
  const auto qn = out.dfa.run(std::span<const Digit>(t).first(t.size() - 1));
  if (!qn) throw DomainError("canonical automaton does not read t_1...t_{n-1}");
  const auto qprime = out.dfa.add_state(true);
  out.dfa.add_edge(*qn, t.back(), qprime);
  out.dfa.add_edge(qprime, 0, qprime);
  return out;
}

struct EquivalenceReport {
  bool agree = true;
  std::optional<DigitWord> first_disagreement;
  bool dfa_accepts = false;  // at the disagreement
  std::size_t words_checked = 0;
};

/// Compares the automaton with N_U membership on every word of length
/// <= max_len over {0..max(alphabets)}, shortest first, then
/// lexicographically. `threads` > 1 splits each length by leading digit.
inline EquivalenceReport dfa_equiv_language(const Dfa& d, const NumSys& s, std::size_t max_len,
                                            unsigned threads = 1) {
  const Digit amax = std::max(s.alphabet_max(), d.max_label());
  EquivalenceReport report;
  struct Partial {
    std::optional<DigitWord> bad;
    bool dfa = false;
    std::size_t checked = 0;
  };
  auto scan = [&](std::size_t len, Digit lead) {
    Partial p;
    DigitWord w(len, 0);
    if (len) w[0] = lead;
    while (true) {
      ++p.checked;
      const bool a = d.accepts(w), b = s.member(w);
      if (a != b) {
        p.bad = w;
        p.dfa = a;
        return p;
      }
      std::size_t k = len;
      while (k > 1 && w[k - 1] == amax) w[--k] = 0;
      if (k <= 1) return p;
      ++w[k - 1];
    }
  };
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::vector<Partial> parts(len == 0 ? 1 : amax + 1);
    if (threads > 1 && len > 0) {
      std::vector<std::future<Partial>> fut;
      for (Digit lead = 0; lead <= amax; ++lead) fut.push_back(std::async(std::launch::async, scan, len, lead));
      for (Digit lead = 0; lead <= amax; ++lead) parts[lead] = fut[lead].get();
    } else {
      for (std::size_t lead = 0; lead < parts.size(); ++lead) {
        parts[lead] = scan(len, static_cast<Digit>(lead));
        if (parts[lead].bad) break;
      }
    }
    for (const auto& p : parts) {
      report.words_checked += p.checked;
      if (p.bad && report.agree) {
        report.agree = false;
        report.first_disagreement = p.bad;
        report.dfa_accepts = p.dfa;
      }
    }
    if (!report.agree) return report;
  }
  return report;
}

/// Graphviz rendering with states numbered breadth-first from the initial
/// state; parallel edges share one arrow with a comma-separated label.
inline std::string to_dot(const Dfa& input, const std::string& name = "dfa") {
  const Dfa d = input.canonical();
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  out << "  node [shape=circle];\n";
  out << "  start [shape=point];\n";
  for (std::size_t q = 0; q < d.num_states(); ++q)
    out << "  q" << q << (d.is_final(q) ? " [shape=doublecircle];\n" : ";\n");
  out << "  start -> q0;\n";
  for (std::size_t q = 0; q < d.num_states(); ++q) {
    std::map<std::size_t, std::vector<Digit>> by_target;
    for (auto [c, t] : d.edges(q)) by_target[t].push_back(c);
    for (const auto& [t, labels] : by_target) {
      out << "  q" << q << " -> q" << t << " [label=\"";
      for (std::size_t k = 0; k < labels.size(); ++k) out << (k ? "," : "") << labels[k];
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace numeration

#endif  // NUMERATION_AUTOMATA_HPP
