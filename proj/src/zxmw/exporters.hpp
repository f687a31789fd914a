#pragma once

#include <string>

#include "engine.hpp"

namespace zxmw {

// Truncates at 64 characters with a stable FNV-1a hash suffix so long labels
// stay legible and distinct in rendered figures.
std::string dot_label(const std::string& text);

// Deterministic exports: vertices ordered lexicographically by
// (generation, canonical key); events ordered by endpoints, rule, match.
// `sys` (optional) supplies human-readable rule labels.
std::string multiway_dot(const MultiwayGraph& mw, const RewriteSystem* sys = nullptr);
std::string causal_dot(const MultiwayGraph& mw, const CausalGraph& cg,
                       const RewriteSystem* sys = nullptr);
std::string branchial_dot(const MultiwayGraph& mw, const BranchialGraph& bg);

// JSON dumps (states/events/edges plus the config block: caps, mode,
// branchial window; worker count deliberately excluded so artifacts are
// schedule-independent).
std::string multiway_json(const MultiwayGraph& mw, const EngineConfig& cfg,
                          const std::string& system_name,
                          const RewriteSystem* sys = nullptr);
std::string causal_json(const MultiwayGraph& mw, const CausalGraph& cg,
                        const RewriteSystem* sys = nullptr);
std::string branchial_json(const MultiwayGraph& mw, const BranchialGraph& bg, int slice,
                           int window);

}  // namespace zxmw
