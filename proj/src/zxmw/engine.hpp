#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace zxmw {

// One rule application produced by a frontend. `state` is already canonical.
// `consumed` indexes elements of the canonical input state; `inherited_from`
// has one entry per element of the canonical successor state (input element
// index, or -1 for a freshly produced element). Both may be empty when the
// frontend does not track element provenance.
struct Successor {
  std::any state;
  std::string key;
  int rule_id = 0;
  std::string match_desc;
  std::vector<int> consumed;
  std::vector<int> inherited_from;
};

// The abstract rewrite relation: apply any rule at any match. States are
// opaque to the engine; frontends provide canonicalization and hashing via
// the canonical key string. Implementations must be pure (thread-safe).
class RewriteSystem {
 public:
  virtual ~RewriteSystem() = default;
  virtual std::string name() const = 0;
  virtual std::any canonical(const std::any& state) const = 0;
  virtual std::string key(const std::any& state) const = 0;
  virtual std::vector<Successor> successors(const std::any& state) const = 0;
  virtual int element_count(const std::any& state) const { return 0; }
  virtual std::size_t rule_count() const = 0;
  virtual std::string rule_label(int rule_id) const { return std::to_string(rule_id); }
};

enum class MultiwayMode {
  Evolution,  // layered DAG; vertices are (canonical form, generation)
  States,     // one vertex per canonical form; cycles permitted
};

struct EngineConfig {
  std::size_t max_states = 1000000;
  std::size_t max_events = 4000000;
  int workers = 1;
  int branchial_window = 1;  // common-ancestor window in slices
};

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MWState {
  std::string key;
  std::any value;
  int generation = 0;
  std::vector<std::int64_t> element_ids;  // provenance; empty when untracked
};

struct MWEvent {
  int rule_id = 0;
  int input_state = -1;
  int output_state = -1;
  std::string match_desc;
  std::vector<std::int64_t> in_ids;
  std::vector<std::int64_t> out_ids;
  int generation = 0;  // generation of the input state
};

struct MultiwayGraph {
  MultiwayMode mode = MultiwayMode::Evolution;
  std::vector<MWState> states;
  std::vector<MWEvent> events;
  std::vector<int> roots;
  int steps = 0;

  std::vector<std::vector<int>> out_edges() const;  // state -> successor states
  std::vector<std::vector<int>> in_edges() const;
  int max_generation() const;
  std::vector<int> slice(int t) const;  // states with generation == t
  int find_state(const std::string& key) const;
};

MultiwayGraph evolve(const RewriteSystem& system, const std::vector<std::any>& init,
                     int steps, MultiwayMode mode, const EngineConfig& cfg = {});

struct CausalGraph {
  int n = 0;                                  // == number of events
  std::vector<std::pair<int, int>> edges;     // event -> event
  std::vector<std::vector<int>> adjacency() const;
};

// Edge A->B iff Out(A) and In(B) share an element id. `transitive_reduction`
// removes edges implied by longer paths.
CausalGraph causal_graph(const MultiwayGraph& mw, bool transitive_reduction = false);

// (future cone, past cone), both excluding the event itself.
std::pair<std::set<int>, std::set<int>> causal_cones(const CausalGraph& cg, int event);

struct BranchialGraph {
  std::vector<int> vertices;                  // state indices in the slice
  std::vector<std::pair<int, int>> edges;     // undirected, state indices
};

// Default foliation: generation index. Branchial edge between distinct states
// in slice t iff they share a common ancestor state within `window` earlier
// slices (window 1 = immediate branch pairs).
BranchialGraph branchial(const MultiwayGraph& mw, int t, int window = 1);

// Number of distinct root-to-state paths; evolution (DAG) mode only.
std::vector<std::uint64_t> path_weights(const MultiwayGraph& mw);

struct ConfluenceReport {
  enum class Verdict { Confluent, Counterexample, Inconclusive } verdict;
  std::string diverging_state;
  std::string branch_a, branch_b;
  std::size_t pairs_checked = 0;
};

ConfluenceReport check_confluence(const RewriteSystem& system, const std::any& init,
                                  int depth, const EngineConfig& cfg = {});

struct CausalInvarianceReport {
  enum class Verdict { Invariant, Violated, Inconclusive } verdict;
  std::size_t paths_checked = 0;
};

CausalInvarianceReport check_causal_invariance(const RewriteSystem& system,
                                               const std::any& init, int depth,
                                               std::size_t max_paths = 256,
                                               const EngineConfig& cfg = {});

// All one-step divergences (pairs of distinct successors) from `state`.
std::vector<std::pair<Successor, Successor>> branch_pairs(const RewriteSystem& system,
                                                          const std::any& state);

// Wraps a base system with literal whole-state rules added by completion.
class CompletedSystem : public RewriteSystem {
 public:
  explicit CompletedSystem(const RewriteSystem& base) : base_(base) {}
  void add_rule(const std::any& from, const std::any& to);
  const std::vector<std::pair<std::string, std::string>>& added_keys() const {
    return added_;
  }

  std::string name() const override { return base_.name() + "+completion"; }
  std::any canonical(const std::any& s) const override { return base_.canonical(s); }
  std::string key(const std::any& s) const override { return base_.key(s); }
  std::vector<Successor> successors(const std::any& s) const override;
  int element_count(const std::any& s) const override { return base_.element_count(s); }
  std::size_t rule_count() const override { return base_.rule_count() + rules_.size(); }
  std::string rule_label(int rule_id) const override;

 private:
  const RewriteSystem& base_;
  std::vector<std::pair<std::any, std::any>> rules_;  // canonical from/to
  std::vector<std::pair<std::string, std::string>> added_;
};

struct CompletionReport {
  // Pairs of canonical keys joined by added bidirectional rules.
  std::vector<std::pair<std::string, std::string>> added_rules;
  bool reached_fixpoint = false;
};

// Bounded greedy critical-pair completion: unjoinable branch pairs (and, with
// multiple initial states, unjoinable root pairs) get bidirectional literal
// rules until fixpoint or the iteration cap. `oriented` adds only the
// shortlex-decreasing direction (classic string-rewriting orientation).
CompletionReport complete(CompletedSystem& system, const std::vector<std::any>& init,
                          int depth, int max_rounds = 8, bool oriented = false,
                          const EngineConfig& cfg = {});

}  // namespace zxmw
