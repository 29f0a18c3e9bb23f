/*
 * Copyright (C) 2026 The AutoComply Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "autocomply/ccfg.hpp"

namespace autocomply {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

bool can_throw(const DecodedInsn& d)
{
    return d.kind == InsnKind::Invoke || d.kind == InsnKind::Throw;
}

bool better_witness(const std::vector<std::uint32_t>& candidate, const std::vector<std::uint32_t>& best)
{
    if (best.empty()) {
        return true;
    }
    if (candidate.size() != best.size()) {
        return candidate.size() < best.size();
    }
    return candidate < best;
}

// Must-call over simple paths. A simple path avoiding every satisfying
// node exists exactly when a return is reachable from the entry in the
// graph with those nodes removed, so plain BFS decides it.
class CallChecker {
public:
    CallChecker(const Obligation& obligation, const CalleeResolver* resolver)
        : obligation_(obligation), resolver_(resolver)
    {
    }

    PathResult check(const MethodCfg& cfg, unsigned depth)
    {
        PathResult result;
        const auto entry = cfg.entry();
        if (!entry) {
            return result;
        }
        const std::vector<bool> sat = satisfying(cfg, depth);
        if (sat[*entry]) {
            return result;
        }
        const std::size_t n = cfg.size();
        std::vector<std::vector<std::uint32_t>> preds(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!cfg.executable(i) || sat[i]) {
                continue;
            }
            for (const std::uint32_t s : cfg.successors(i)) {
                if (!sat[s]) {
                    preds[s].push_back(static_cast<std::uint32_t>(i));
                }
            }
        }
        std::vector<std::uint32_t> dist(n, kUnreached);
        std::deque<std::uint32_t> queue;
        for (std::size_t i = 0; i < n; ++i) {
            if (cfg.executable(i) && !sat[i] && cfg.insn(i).kind == InsnKind::Return) {
                dist[i] = 0;
                queue.push_back(static_cast<std::uint32_t>(i));
            }
        }
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            ++result.steps;
            for (const std::uint32_t p : preds[v]) {
                if (dist[p] == kUnreached) {
                    dist[p] = dist[v] + 1;
                    queue.push_back(p);
                }
            }
        }
        if (dist[*entry] == kUnreached) {
            return result;
        }
        result.verdict = PathVerdict::Counterexample;
        std::size_t cur = *entry;
        result.witness.push_back(cfg.insn(cur).offset);
        while (dist[cur] > 0) {
            // Successors are sorted by offset, so the first hit is the
            // lexicographically smallest continuation.
            for (const std::uint32_t s : cfg.successors(cur)) {
                if (!sat[s] && dist[s] == dist[cur] - 1) {
                    cur = s;
                    break;
                }
            }
            result.witness.push_back(cfg.insn(cur).offset);
        }
        return result;
    }

private:
    std::vector<bool> satisfying(const MethodCfg& cfg, unsigned depth)
    {
        std::vector<bool> sat(cfg.size(), false);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            const DecodedInsn& d = cfg.insn(i);
            if (d.kind != InsnKind::Invoke) {
                continue;
            }
            sat[i] = std::any_of(obligation_.targets.begin(), obligation_.targets.end(),
                                 [&](const std::string& t) { return call_matches(d.target, t); });
            if (!sat[i] && depth > 0 && resolver_) {
                if (const MethodCfg* callee = resolver_->callee(d)) {
                    sat[i] = callee_satisfies(*callee, depth - 1);
                }
            }
        }
        return sat;
    }

    bool callee_satisfies(const MethodCfg& callee, unsigned depth)
    {
        const auto key = std::make_pair(&callee, depth);
        if (const auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        // Depth strictly decreases along expansion, so no key recurs.
        const bool ok = check(callee, depth).verdict == PathVerdict::Satisfied;
        memo_.emplace(key, ok);
        return ok;
    }

    const Obligation& obligation_;
    const CalleeResolver* resolver_;
    std::map<std::pair<const MethodCfg*, unsigned>, bool> memo_;
};

// Return-nonnull needs the last definition of the returned register along
// each path, so simple paths are enumerated depth-first under the budgets.
class NullReturnChecker {
public:
    NullReturnChecker(const MethodCfg& cfg, const PathLimits& limits) : cfg_(cfg), limits_(limits) {}

    PathResult run()
    {
        PathResult result;
        const auto entry = cfg_.entry();
        if (!entry) {
            return result;
        }
        const std::size_t regs = static_cast<std::size_t>(cfg_.code().registers) + 2;
        null_.assign(regs, false);
        on_path_.assign(cfg_.size(), false);

        struct Frame {
            std::uint32_t node;
            std::size_t next = 0;
            std::vector<std::pair<std::uint16_t, bool>> undo;
        };
        std::vector<Frame> stack;
        std::vector<std::uint32_t> path;

        auto enter = [&](std::uint32_t v) -> bool {
            ++result.steps;
            if (result.steps > limits_.step_budget) {
                return false;
            }
            Frame f{v, 0, {}};
            apply(cfg_.insn(v), f.undo);
            on_path_[v] = true;
            path.push_back(cfg_.insn(v).offset);
            const DecodedInsn& d = cfg_.insn(v);
            if (d.kind == InsnKind::Return) {
                ++result.paths;
                if (d.opcode == 0x11 && d.value_reg && null_at(*d.value_reg) && better_witness(path, best_)) {
                    best_ = path;
                }
                if (result.paths > limits_.path_budget) {
                    return false;
                }
            }
            stack.push_back(std::move(f));
            return true;
        };
        auto leave = [&]() {
            Frame& f = stack.back();
            for (auto it = f.undo.rbegin(); it != f.undo.rend(); ++it) {
                null_[it->first] = it->second;
            }
            on_path_[f.node] = false;
            path.pop_back();
            stack.pop_back();
        };

        bool within_budget = enter(static_cast<std::uint32_t>(*entry));
        while (within_budget && !stack.empty()) {
            Frame& top = stack.back();
            const auto& succ = cfg_.successors(top.node);
            if (top.next >= succ.size()) {
                leave();
                continue;
            }
            const std::uint32_t s = succ[top.next++];
            if (!on_path_[s]) {
                within_budget = enter(s);
            }
        }
        if (!within_budget) {
            result.verdict = PathVerdict::Inconclusive;
            return result;
        }
        if (!best_.empty()) {
            result.verdict = PathVerdict::Counterexample;
            result.witness = best_;
        }
        return result;
    }

private:
    bool null_at(std::uint16_t reg) const { return reg < null_.size() && null_[reg]; }

    void set(std::uint16_t reg, bool value, std::vector<std::pair<std::uint16_t, bool>>& undo)
    {
        if (reg >= null_.size()) {
            null_.resize(reg + 1u, false);
        }
        undo.emplace_back(reg, null_[reg]);
        null_[reg] = value;
    }

    void apply(const DecodedInsn& d, std::vector<std::pair<std::uint16_t, bool>>& undo)
    {
        if (!d.dest) {
            return;
        }
        bool value = false;
        if (d.kind == InsnKind::ConstNull) {
            value = true;
        } else if (d.move_src && !d.wide) {
            value = null_at(*d.move_src);
        }
        set(*d.dest, value, undo);
        if (d.wide) {
            set(static_cast<std::uint16_t>(*d.dest + 1), false, undo);
        }
    }

    const MethodCfg& cfg_;
    const PathLimits& limits_;
    std::vector<bool> null_;
    std::vector<bool> on_path_;
    std::vector<std::uint32_t> best_;
};

} // namespace

MethodCfg::MethodCfg(const CodeItem& code, MethodRef ref) : code_(&code), ref_(std::move(ref))
{
    const auto& insns = code.instructions;
    succ_.resize(insns.size());
    for (std::size_t i = 0; i < insns.size(); ++i) {
        const DecodedInsn& d = insns[i];
        if (d.kind == InsnKind::Payload) {
            continue;
        }
        std::vector<std::uint32_t>& out = succ_[i];
        auto add = [&](std::optional<std::size_t> target) {
            if (target && insns[*target].kind != InsnKind::Payload) {
                out.push_back(static_cast<std::uint32_t>(*target));
            }
        };
        if (d.kind == InsnKind::Branch) {
            for (const std::uint32_t t : d.targets) {
                add(code.index_at(t));
            }
        }
        const bool falls = d.kind != InsnKind::Return && d.kind != InsnKind::Throw &&
                           !(d.kind == InsnKind::Branch && !d.falls_through);
        if (falls && i + 1 < insns.size()) {
            add(i + 1);
        }
        if (can_throw(d)) {
            for (const TryRange& tr : code.tries) {
                if (d.offset >= tr.start && d.offset < tr.end) {
                    for (const CatchHandler& h : tr.handlers) {
                        add(code.index_at(h.address));
                    }
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
}

std::optional<std::size_t> MethodCfg::entry() const
{
    if (succ_.empty() || !executable(0)) {
        return std::nullopt;
    }
    return 0;
}

std::size_t MethodCfg::node_count() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        n += executable(i) ? 1 : 0;
    }
    return n;
}

std::size_t MethodCfg::edge_count() const
{
    std::size_t n = 0;
    for (const auto& s : succ_) {
        n += s.size();
    }
    return n;
}

bool call_matches(const MethodRef& target, std::string_view pattern)
{
    if (pattern.find('.') == std::string_view::npos && pattern.find('(') == std::string_view::npos) {
        return target.name == pattern;
    }
    const std::string qualified = target.owner + "." + target.name;
    return name_has_suffix(qualified, pattern) || name_has_suffix(qualified + target.descriptor, pattern);
}

PathResult all_paths_satisfy(const MethodCfg& cfg, const Obligation& obligation, const PathLimits& limits,
                             const CalleeResolver* resolver)
{
    if (obligation.kind == Obligation::Kind::ReturnNonNull) {
        return NullReturnChecker(cfg, limits).run();
    }
    return CallChecker(obligation, resolver).check(cfg, limits.inline_depth);
}

} // namespace autocomply
