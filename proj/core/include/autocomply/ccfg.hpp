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

#ifndef AUTOCOMPLY_CCFG_HPP
#define AUTOCOMPLY_CCFG_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "autocomply/app_model.hpp"
#include "autocomply/catalog.hpp"
#include "autocomply/dex.hpp"
#include "autocomply/manifest.hpp"

namespace autocomply {

/// Intraprocedural control flow over one code item. Payload pseudo-
/// instructions are not executable and get no successors. Exceptional edges
/// run from invoke and throw instructions inside a try range to its handlers.
class MethodCfg {
public:
    MethodCfg(const CodeItem& code, MethodRef ref);

    const MethodRef& ref() const noexcept { return ref_; }
    const CodeItem& code() const noexcept { return *code_; }
    std::size_t size() const noexcept { return succ_.size(); }
    bool executable(std::size_t i) const { return code_->instructions[i].kind != InsnKind::Payload; }
    const DecodedInsn& insn(std::size_t i) const { return code_->instructions[i]; }
    /// Successor instruction indices, ascending by offset, without duplicates.
    const std::vector<std::uint32_t>& successors(std::size_t i) const { return succ_[i]; }
    /// Index of the first instruction; absent for empty code.
    std::optional<std::size_t> entry() const;
    std::size_t node_count() const;  // executable instructions
    std::size_t edge_count() const;

private:
    const CodeItem* code_;
    MethodRef ref_;
    std::vector<std::vector<std::uint32_t>> succ_;
};

/// Looks up the body an invoke runs, for call expansion.
class CalleeResolver {
public:
    virtual ~CalleeResolver() = default;
    virtual const MethodCfg* callee(const DecodedInsn& invoke) const = 0;
};

struct Obligation {
    enum class Kind { ReturnNonNull, Call };
    Kind kind = Kind::ReturnNonNull;
    // Call: method-name patterns; see call_matches.
    std::vector<std::string> targets;

    static Obligation return_nonnull() { return {Kind::ReturnNonNull, {}}; }
    static Obligation call(std::vector<std::string> targets) { return {Kind::Call, std::move(targets)}; }
};

struct PathLimits {
    unsigned inline_depth = 3;
    std::uint64_t path_budget = 10000;
    std::uint64_t step_budget = 1000000;
};

enum class PathVerdict { Satisfied, Counterexample, Inconclusive };

struct PathResult {
    PathVerdict verdict = PathVerdict::Satisfied;
    // Offsets of the shortest violating path, ties broken by the
    // lexicographically smallest offset sequence.
    std::vector<std::uint32_t> witness;
    std::uint64_t paths = 0;  // complete paths enumerated (return-nonnull)
    std::uint64_t steps = 0;
};

/// Checks every simple path from the entry to a return instruction.
/// ReturnNonNull: the returned register does not hold a null constant.
/// Call: the path contains an invoke matching a target, or an invoke of a
/// body that itself satisfies the obligation within `inline_depth` levels
/// (requires `resolver`). Budget exhaustion yields Inconclusive.
PathResult all_paths_satisfy(const MethodCfg& cfg, const Obligation& obligation,
                             const PathLimits& limits = {}, const CalleeResolver* resolver = nullptr);

/// A plain name matches the method name; a pattern with '.' or '(' matches
/// a suffix of "owner.name" or "owner.name(descriptor)" at a name boundary.
bool call_matches(const MethodRef& target, std::string_view pattern);

enum class NodeKind { MethodEntry, Instruction, Host };
using NodeId = std::uint32_t;

struct CcfgNode {
    NodeId id = 0;
    NodeKind kind = NodeKind::Instruction;
    std::optional<MethodRef> method;  // absent for host nodes
    std::uint32_t offset = 0;         // Instruction
    HostSource source = HostSource::UiRequest;  // Host
    std::string component;                      // Host
};

struct CcfgEdge {
    NodeId from = 0;
    NodeId to = 0;
    auto operator<=>(const CcfgEdge&) const = default;
};

struct CallSite {
    NodeId node = 0;
    const DexMethod* caller = nullptr;
    std::uint32_t offset = 0;
    MethodRef target;
    const DexMethod* callee = nullptr;  // null: framework or unresolvable
};

/// How a manifest component was tied to code.
struct ComponentInfo {
    AutoComponentRef ref;
    const DexClass* cls = nullptr;  // null when the class is not in the app
    std::vector<const DexClass*> session_classes;
    bool session_from_fallback = false;
    std::string session_evidence;
};

/// One host edge: a host source invoking a callback implementation.
struct HostBinding {
    std::string component;
    const CallbackSpec* spec = nullptr;
    const DexMethod* implementation = nullptr;
    NodeId host_node = 0;
    NodeId entry_node = 0;
};

class Ccfg : public CalleeResolver {
public:
    const AppModel& model() const noexcept { return *model_; }
    const std::vector<CcfgNode>& nodes() const noexcept { return nodes_; }
    const CcfgNode& node(NodeId id) const { return nodes_.at(id); }

    /// Ascending node ids.
    std::vector<NodeId> base_nodes() const;
    std::vector<NodeId> host_nodes() const;
    /// Sorted, duplicate-free edge sets.
    const std::vector<CcfgEdge>& base_edges() const noexcept { return base_edges_; }
    const std::vector<CcfgEdge>& host_edges() const noexcept { return host_edges_; }
    std::vector<CcfgEdge> edges() const;

    const std::vector<CallSite>& call_sites() const noexcept { return call_sites_; }
    const MethodCfg* method_cfg(const DexMethod* method) const;
    std::optional<NodeId> entry_node(const DexMethod* method) const;
    std::optional<NodeId> instruction_node(const DexMethod* method, std::uint32_t offset) const;

    const std::vector<ComponentInfo>& components() const noexcept { return components_; }
    const ComponentInfo* component(std::string_view class_name) const;
    const std::vector<HostBinding>& host_bindings() const noexcept { return bindings_; }
    /// Implementation the host edge for (component, callback) points at.
    const DexMethod* implementation(std::string_view component, std::string_view callback) const;
    std::optional<NodeId> host_node(std::string_view component, HostSource source) const;

    /// App-local body an invoke resolves to (static receiver type, then
    /// its app superclasses).
    const DexMethod* resolve_invoke(const DecodedInsn& invoke) const;
    const MethodCfg* callee(const DecodedInsn& invoke) const override;

    /// Plain-text dump: one node or edge record per line (docs/ccfg-dump.md).
    void dump(std::ostream& out) const;

private:
    friend Ccfg construct_base_icfg(const AppModel& model);
    friend Ccfg augment_with_host(const Ccfg& ccfg, const std::vector<AutoComponentRef>& components,
                                  const Catalog& catalog);

    NodeId add_node(CcfgNode node);

    const AppModel* model_ = nullptr;
    std::vector<CcfgNode> nodes_;
    std::vector<CcfgEdge> base_edges_;
    std::vector<CcfgEdge> host_edges_;
    std::vector<MethodCfg> cfgs_;
    std::unordered_map<const DexMethod*, std::size_t> cfg_index_;
    std::vector<const DexMethod*> cfg_methods_;        // parallel to cfgs_
    std::vector<NodeId> entry_nodes_;                  // parallel to cfgs_
    std::vector<std::vector<NodeId>> insn_nodes_;      // parallel to cfgs_; per instruction
    std::vector<CallSite> call_sites_;
    std::vector<ComponentInfo> components_;
    std::vector<HostBinding> bindings_;
    std::map<std::pair<std::string, HostSource>, NodeId> host_index_;
};

/// Method-entry and instruction nodes for every method with code,
/// intraprocedural edges, and call edges to resolved app-local bodies.
/// `model` must outlive the graph.
Ccfg construct_base_icfg(const AppModel& model);

/// Adds one host node per (component, host source) and a host edge to each
/// implemented catalog callback. Applying it twice with the same inputs
/// yields the same graph.
Ccfg augment_with_host(const Ccfg& ccfg, const std::vector<AutoComponentRef>& components,
                       const Catalog& catalog);

/// Finds the implementation of `spec` on `cls` or its app superclasses,
/// matching the name and one of the accepted signatures.
const DexMethod* find_callback(const AppModel& model, const DexClass& cls, const CallbackSpec& spec);

/// "Landroid/os/Bundle;" -> "Bundle", "I" -> "int", "[B" -> "byte[]".
std::string simple_type_name(std::string_view descriptor);

} // namespace autocomply

#endif // AUTOCOMPLY_CCFG_HPP
