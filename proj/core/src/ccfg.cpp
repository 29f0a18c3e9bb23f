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

#include "autocomply/ccfg.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <unordered_set>

namespace autocomply {
namespace {

void sort_unique(std::vector<CcfgEdge>& edges)
{
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

std::string_view kind_word(const DecodedInsn& d)
{
    switch (d.kind) {
    case InsnKind::Invoke: return "invoke";
    case InsnKind::Return: return "return";
    case InsnKind::ConstNull: return "const-null";
    case InsnKind::Branch: return "branch";
    case InsnKind::Throw: return "throw";
    case InsnKind::MoveResult: return "move-result";
    case InsnKind::Other: return "other";
    case InsnKind::Payload: return "payload";
    }
    return "?";
}

bool signature_matches(const DexMethod& m, const CallbackSpec& spec)
{
    std::vector<std::string> params;
    for (const std::string& p : descriptor_params(m.descriptor)) {
        params.push_back(simple_type_name(p));
    }
    if (!spec.returns.empty() && simple_type_name(descriptor_return(m.descriptor)) != spec.returns) {
        return false;
    }
    return spec.signatures.empty() ||
           std::find(spec.signatures.begin(), spec.signatures.end(), params) != spec.signatures.end();
}

// Methods with code reachable over resolved call edges from the methods of
// `cls` and its app superclasses, in breadth-first order.
std::vector<const DexMethod*> reachable_from(const Ccfg& g, const DexClass& cls)
{
    const AppModel& model = g.model();
    std::vector<const DexMethod*> order;
    std::unordered_set<const DexMethod*> seen;
    std::deque<const DexMethod*> queue;
    std::unordered_set<const DexClass*> chain;
    for (const DexClass* c = &cls; c && chain.insert(c).second;
         c = c->superclass ? model.find_class(*c->superclass) : nullptr) {
        for (const DexMethod& m : c->methods) {
            if (m.code && seen.insert(&m).second) {
                queue.push_back(&m);
            }
        }
    }
    while (!queue.empty()) {
        const DexMethod* m = queue.front();
        queue.pop_front();
        order.push_back(m);
        for (const DecodedInsn& d : m->code->instructions) {
            if (d.kind != InsnKind::Invoke) {
                continue;
            }
            const DexMethod* callee = g.resolve_invoke(d);
            if (callee && callee->code && seen.insert(callee).second) {
                queue.push_back(callee);
            }
        }
    }
    return order;
}

// Class whose fresh instance sits in `reg` just before `at`, when the
// nearest earlier write to that register is a new-instance.
std::optional<std::string> constructed_type(const CodeItem& code, std::size_t at, std::uint16_t reg)
{
    for (std::size_t i = at; i-- > 0;) {
        const DecodedInsn& d = code.instructions[i];
        const bool writes = d.dest && (*d.dest == reg || (d.wide && *d.dest + 1 == reg));
        if (!writes) {
            continue;
        }
        if (d.opcode == 0x22 && !d.type_ref.empty()) {
            return d.type_ref;
        }
        if (d.move_src && !d.wide) {
            reg = *d.move_src;
            continue;
        }
        return std::nullopt;
    }
    return std::nullopt;
}

void discover_session_classes(const Ccfg& g, const Catalog& catalog, ComponentInfo& info)
{
    const AppModel& model = g.model();
    const std::vector<const DexMethod*> reachable = reachable_from(g, *info.cls);
    std::vector<std::string> notes;
    for (const DexMethod* m : reachable) {
        const auto& insns = m->code->instructions;
        for (std::size_t i = 0; i < insns.size(); ++i) {
            const DecodedInsn& d = insns[i];
            if (d.kind != InsnKind::Invoke || d.target.name != "setCallback" || d.args.size() < 2) {
                continue;
            }
            const auto type = constructed_type(*m->code, i, d.args[1]);
            const DexClass* cls = type ? model.find_class(*type) : nullptr;
            if (cls && std::find(info.session_classes.begin(), info.session_classes.end(), cls) ==
                           info.session_classes.end()) {
                info.session_classes.push_back(cls);
                notes.push_back(cls->name + " registered by setCallback in " + m->ref().display() + " at offset " +
                                std::to_string(d.offset));
            }
        }
    }
    if (!info.session_classes.empty()) {
        for (std::size_t k = 0; k < notes.size(); ++k) {
            info.session_evidence += (k ? "; " : "") + notes[k];
        }
        return;
    }

    // Fallback: app classes the component reaches, by call or construction,
    // that look like session callbacks.
    std::set<std::string> session_bases(catalog.session_bases.begin(), catalog.session_bases.end());
    std::unordered_set<const DexClass*> derived;
    for (const DexClass* c : subclasses_of(model.classes(), session_bases)) {
        derived.insert(c);
    }
    std::unordered_set<const DexClass*> touched;
    for (const DexMethod* m : reachable) {
        if (const DexClass* owner = model.find_class(m->owner)) {
            touched.insert(owner);
        }
        for (const DecodedInsn& d : m->code->instructions) {
            if (d.opcode == 0x22 && !d.type_ref.empty()) {
                if (const DexClass* c = model.find_class(d.type_ref)) {
                    touched.insert(c);
                }
            }
        }
    }
    for (const DexClass& c : model.classes()) {
        if (!touched.contains(&c) || &c == info.cls) {
            continue;
        }
        bool declares = false;
        for (const CallbackSpec& spec : catalog.callbacks) {
            if (spec.owner == OwnerKind::MediaSessionCallback && find_callback(model, c, spec)) {
                declares = true;
                break;
            }
        }
        if (derived.contains(&c) || declares) {
            info.session_classes.push_back(&c);
        }
    }
    info.session_from_fallback = true;
    if (info.session_classes.empty()) {
        info.session_evidence = "no session callback class is registered or reachable from " + info.cls->name;
    } else {
        info.session_evidence = "no statically evident setCallback argument; using reachable class";
        info.session_evidence += info.session_classes.size() > 1 ? "es " : " ";
        for (std::size_t k = 0; k < info.session_classes.size(); ++k) {
            info.session_evidence += (k ? ", " : "") + info.session_classes[k]->name;
        }
    }
}

} // namespace

std::string simple_type_name(std::string_view descriptor)
{
    std::size_t dims = 0;
    while (dims < descriptor.size() && descriptor[dims] == '[') {
        ++dims;
    }
    const std::string_view base = descriptor.substr(dims);
    std::string name;
    if (base.size() >= 2 && base.front() == 'L' && base.back() == ';') {
        const std::string_view body = base.substr(1, base.size() - 2);
        const auto cut = body.find_last_of("/$");
        name = std::string(cut == std::string_view::npos ? body : body.substr(cut + 1));
    } else if (base.size() == 1) {
        switch (base[0]) {
        case 'V': name = "void"; break;
        case 'Z': name = "boolean"; break;
        case 'B': name = "byte"; break;
        case 'S': name = "short"; break;
        case 'C': name = "char"; break;
        case 'I': name = "int"; break;
        case 'J': name = "long"; break;
        case 'F': name = "float"; break;
        case 'D': name = "double"; break;
        default: name = std::string(base); break;
        }
    } else {
        name = std::string(base);
    }
    for (std::size_t k = 0; k < dims; ++k) {
        name += "[]";
    }
    return name;
}

const DexMethod* find_callback(const AppModel& model, const DexClass& cls, const CallbackSpec& spec)
{
    std::unordered_set<const DexClass*> seen;
    for (const DexClass* c = &cls; c && seen.insert(c).second;
         c = c->superclass ? model.find_class(*c->superclass) : nullptr) {
        for (const DexMethod& m : c->methods) {
            if (m.name == spec.name && m.code && signature_matches(m, spec)) {
                return &m;
            }
        }
    }
    return nullptr;
}

NodeId Ccfg::add_node(CcfgNode node)
{
    node.id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(std::move(node));
    return nodes_.back().id;
}

std::vector<NodeId> Ccfg::base_nodes() const
{
    std::vector<NodeId> out;
    for (const CcfgNode& n : nodes_) {
        if (n.kind != NodeKind::Host) {
            out.push_back(n.id);
        }
    }
    return out;
}

std::vector<NodeId> Ccfg::host_nodes() const
{
    std::vector<NodeId> out;
    for (const CcfgNode& n : nodes_) {
        if (n.kind == NodeKind::Host) {
            out.push_back(n.id);
        }
    }
    return out;
}

std::vector<CcfgEdge> Ccfg::edges() const
{
    std::vector<CcfgEdge> out = base_edges_;
    out.insert(out.end(), host_edges_.begin(), host_edges_.end());
    sort_unique(out);
    return out;
}

const MethodCfg* Ccfg::method_cfg(const DexMethod* method) const
{
    const auto it = cfg_index_.find(method);
    return it == cfg_index_.end() ? nullptr : &cfgs_[it->second];
}

std::optional<NodeId> Ccfg::entry_node(const DexMethod* method) const
{
    const auto it = cfg_index_.find(method);
    if (it == cfg_index_.end()) {
        return std::nullopt;
    }
    return entry_nodes_[it->second];
}

std::optional<NodeId> Ccfg::instruction_node(const DexMethod* method, std::uint32_t offset) const
{
    const auto it = cfg_index_.find(method);
    if (it == cfg_index_.end()) {
        return std::nullopt;
    }
    const auto index = cfgs_[it->second].code().index_at(offset);
    if (!index || !cfgs_[it->second].executable(*index)) {
        return std::nullopt;
    }
    return insn_nodes_[it->second][*index];
}

const ComponentInfo* Ccfg::component(std::string_view class_name) const
{
    for (const ComponentInfo& c : components_) {
        if (c.ref.class_name == class_name) {
            return &c;
        }
    }
    return nullptr;
}

const DexMethod* Ccfg::implementation(std::string_view component, std::string_view callback) const
{
    for (const HostBinding& b : bindings_) {
        if (b.component == component && b.spec->name == callback) {
            return b.implementation;
        }
    }
    return nullptr;
}

std::optional<NodeId> Ccfg::host_node(std::string_view component, HostSource source) const
{
    const auto it = host_index_.find({std::string(component), source});
    if (it == host_index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

const DexMethod* Ccfg::resolve_invoke(const DecodedInsn& invoke) const
{
    if (invoke.kind != InsnKind::Invoke || !model_) {
        return nullptr;
    }
    return model_->resolve_method(invoke.target.owner, invoke.target.name, invoke.target.descriptor);
}

const MethodCfg* Ccfg::callee(const DecodedInsn& invoke) const
{
    return method_cfg(resolve_invoke(invoke));
}

void Ccfg::dump(std::ostream& out) const
{
    out << "# autocomply ccfg\n";
    out << "# nodes " << nodes_.size() << " base-edges " << base_edges_.size() << " host-edges "
        << host_edges_.size() << "\n";
    for (const CcfgNode& n : nodes_) {
        out << "node " << n.id << ' ';
        switch (n.kind) {
        case NodeKind::MethodEntry:
            out << "entry " << n.method->display();
            break;
        case NodeKind::Instruction: {
            out << "insn " << n.method->display() << " @" << n.offset;
            const DexMethod* m = model_->resolve_method(n.method->owner, n.method->name, n.method->descriptor);
            const MethodCfg* cfg = method_cfg(m);
            if (const auto index = cfg ? cfg->code().index_at(n.offset) : std::nullopt) {
                const DecodedInsn& d = cfg->insn(*index);
                out << ' ' << kind_word(d);
                if (d.kind == InsnKind::Invoke) {
                    out << ' ' << d.target.display();
                }
            }
            break;
        }
        case NodeKind::Host:
            out << "host " << to_string(n.source) << ' ' << n.component;
            break;
        }
        out << '\n';
    }
    for (const CcfgEdge& e : base_edges_) {
        out << "edge " << e.from << ' ' << e.to << " base\n";
    }
    for (const CcfgEdge& e : host_edges_) {
        out << "edge " << e.from << ' ' << e.to << " host\n";
    }
}

Ccfg construct_base_icfg(const AppModel& model)
{
    Ccfg g;
    g.model_ = &model;
    for (const DexClass& cls : model.classes()) {
        for (const DexMethod& m : cls.methods) {
            if (!m.code) {
                continue;
            }
            const std::size_t k = g.cfgs_.size();
            g.cfgs_.emplace_back(*m.code, m.ref());
            g.cfg_index_.emplace(&m, k);
            g.cfg_methods_.push_back(&m);
            g.entry_nodes_.push_back(g.add_node({0, NodeKind::MethodEntry, m.ref(), 0, {}, {}}));
            std::vector<NodeId> ids(m.code->instructions.size(), 0);
            for (std::size_t i = 0; i < ids.size(); ++i) {
                if (g.cfgs_[k].executable(i)) {
                    ids[i] = g.add_node(
                        {0, NodeKind::Instruction, m.ref(), m.code->instructions[i].offset, {}, {}});
                }
            }
            g.insn_nodes_.push_back(std::move(ids));
        }
    }
    for (std::size_t k = 0; k < g.cfgs_.size(); ++k) {
        const MethodCfg& cfg = g.cfgs_[k];
        const std::vector<NodeId>& ids = g.insn_nodes_[k];
        if (const auto first = cfg.entry()) {
            g.base_edges_.push_back({g.entry_nodes_[k], ids[*first]});
        }
        const DexMethod* caller = g.cfg_methods_[k];
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            if (!cfg.executable(i)) {
                continue;
            }
            for (const std::uint32_t s : cfg.successors(i)) {
                g.base_edges_.push_back({ids[i], ids[s]});
            }
            const DecodedInsn& d = cfg.insn(i);
            if (d.kind != InsnKind::Invoke) {
                continue;
            }
            CallSite site{ids[i], caller, d.offset, d.target, g.resolve_invoke(d)};
            if (site.callee && !site.callee->code) {
                site.callee = nullptr;
            }
            if (site.callee) {
                g.base_edges_.push_back({ids[i], *g.entry_node(site.callee)});
            }
            g.call_sites_.push_back(std::move(site));
        }
    }
    sort_unique(g.base_edges_);
    return g;
}

Ccfg augment_with_host(const Ccfg& ccfg, const std::vector<AutoComponentRef>& components, const Catalog& catalog)
{
    Ccfg g = ccfg;
    const AppModel& model = g.model();
    for (const AutoComponentRef& ref : components) {
        if (!g.component(ref.class_name)) {
            ComponentInfo info;
            info.ref = ref;
            info.cls = model.find_class(ref.class_name);
            if (info.cls) {
                discover_session_classes(g, catalog, info);
            }
            g.components_.push_back(std::move(info));
        }
        for (const HostSource source : {HostSource::UiRequest, HostSource::HostEvent, HostSource::Assistant}) {
            const auto key = std::make_pair(ref.class_name, source);
            if (!g.host_index_.contains(key)) {
                g.host_index_[key] = g.add_node({0, NodeKind::Host, std::nullopt, 0, source, ref.class_name});
            }
        }
        const ComponentInfo& info = *g.component(ref.class_name);
        if (!info.cls) {
            continue;
        }
        for (const CallbackSpec& spec : catalog.callbacks) {
            if (g.implementation(ref.class_name, spec.name)) {
                continue;
            }
            const DexMethod* impl = nullptr;
            if (spec.owner == OwnerKind::MediaBrowserService) {
                impl = find_callback(model, *info.cls, spec);
            } else {
                for (const DexClass* c : info.session_classes) {
                    if ((impl = find_callback(model, *c, spec))) {
                        break;
                    }
                }
            }
            const auto entry = impl ? g.entry_node(impl) : std::nullopt;
            if (!entry) {
                continue;
            }
            const NodeId host = *g.host_node(ref.class_name, spec.source);
            g.bindings_.push_back({ref.class_name, &spec, impl, host, *entry});
            g.host_edges_.push_back({host, *entry});
        }
    }
    sort_unique(g.host_edges_);
    return g;
}

} // namespace autocomply
