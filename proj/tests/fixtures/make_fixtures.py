#!/usr/bin/env python3
# Copyright (C) 2026 The AutoComply Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the binary test fixtures (AXML manifests, DEX files, APKs).

The encoders here are written against the published file formats and share
no code with the C++ decoders under test.  Every generated artifact is
written next to an oracle file produced by a stock reader (zipfile,
ElementTree) or by the generator's own bookkeeping, so the C++ tests can
compare against frozen expectations.

Run from anywhere:  python3 tests/fixtures/make_fixtures.py
"""

import hashlib
import io
import json
import os
import struct
import sys
import xml.etree.ElementTree as ET
import zipfile
import zlib

HERE = os.path.dirname(os.path.abspath(__file__))
TEXT_DIR = os.path.join(HERE, "text")
MANIFEST_DIR = os.path.join(HERE, "manifests")
DEX_DIR = os.path.join(HERE, "dex")
APK_DIR = os.path.join(HERE, "apks")
CORPUS_DIR = os.path.join(HERE, "corpus")

ANDROID_NS = "http://schemas.android.com/apk/res/android"
ZIP_EPOCH = (2020, 1, 1, 0, 0, 0)

# ---------------------------------------------------------------------------
# Binary AXML encoder
# ---------------------------------------------------------------------------

ANDROID_ATTR_IDS = {
    "label": 0x01010001,
    "icon": 0x01010002,
    "name": 0x01010003,
    "enabled": 0x0101000E,
    "exported": 0x01010010,
    "value": 0x01010024,
    "resource": 0x01010025,
    "minSdkVersion": 0x0101020C,
    "versionCode": 0x0101021B,
    "versionName": 0x0101021C,
    "targetSdkVersion": 0x01010270,
}

TYPE_REFERENCE = 0x01
TYPE_STRING = 0x03
TYPE_INT_DEC = 0x10
TYPE_INT_BOOLEAN = 0x12

RESOURCE_IDS = {}


def resource_id(ref):
    """Deterministic app resource ids for "@type/name" references.

    Type ids are handed out by first appearance, entries by order within
    their type, mirroring how a resource table packs them.
    """
    if ref not in RESOURCE_IDS:
        kind = ref[1:].split("/", 1)[0]
        kinds = []
        for r in RESOURCE_IDS:
            k = r[1:].split("/", 1)[0]
            if k not in kinds:
                kinds.append(k)
        if kind not in kinds:
            kinds.append(kind)
        entry = sum(1 for r in RESOURCE_IDS if r[1:].split("/", 1)[0] == kind)
        RESOURCE_IDS[ref] = 0x7F000000 | ((kinds.index(kind) + 1) << 16) | entry
    return RESOURCE_IDS[ref]


def split_name(tag):
    if tag.startswith("{"):
        ns, local = tag[1:].split("}", 1)
        return ns, local
    return None, tag


def encode_string_pool(strings, utf8):
    offsets = []
    data = bytearray()
    for s in strings:
        offsets.append(len(data))
        if utf8:
            raw = s.encode("utf-8")
            n16 = len(s.encode("utf-16-le")) // 2
            for n in (n16, len(raw)):
                if n > 0x7F:
                    data += bytes([0x80 | (n >> 8), n & 0xFF])
                else:
                    data += bytes([n])
            data += raw + b"\x00"
        else:
            raw = s.encode("utf-16-le")
            n = len(raw) // 2
            if n > 0x7FFF:
                data += struct.pack("<HH", 0x8000 | (n >> 16), n & 0xFFFF)
            else:
                data += struct.pack("<H", n)
            data += raw + b"\x00\x00"
    while len(data) % 4:
        data += b"\x00"
    header_size = 28
    strings_start = header_size + 4 * len(strings)
    size = strings_start + len(data)
    flags = 0x100 if utf8 else 0
    out = struct.pack("<HHI", 0x0001, header_size, size)
    out += struct.pack("<IIIII", len(strings), 0, flags, strings_start, 0)
    out += b"".join(struct.pack("<I", o) for o in offsets)
    out += data
    return out


def encode_axml(xml_text, utf8=False):
    root = ET.fromstring(xml_text)
    elements = list(root.iter())

    # Attribute names that carry a resource id must lead the pool, in the
    # same order as the resource map.
    res_names = []
    other = []

    def add(lst, s):
        if s not in res_names and s not in other:
            lst.append(s)

    for el in elements:
        for key in el.attrib:
            ns, local = split_name(key)
            if ns == ANDROID_NS and local in ANDROID_ATTR_IDS:
                add(res_names, local)
    add(other, "android")
    add(other, ANDROID_NS)
    for el in elements:
        _, tag = split_name(el.tag)
        add(other, tag)
        for key, value in el.attrib.items():
            ns, local = split_name(key)
            add(other, local)
            if not (value in ("true", "false") or value.lstrip("-").isdigit()
                    or value.startswith("@")):
                add(other, value)
    strings = res_names + other
    index = {s: i for i, s in enumerate(strings)}

    body = bytearray()
    body += encode_string_pool(strings, utf8)
    resmap = b"".join(struct.pack("<I", ANDROID_ATTR_IDS[n]) for n in res_names)
    body += struct.pack("<HHI", 0x0180, 8, 8 + len(resmap)) + resmap

    line = [1]

    def node_header(kind, extra):
        return struct.pack("<HHI", kind, 16, 16 + len(extra)) + \
            struct.pack("<II", line[0], 0xFFFFFFFF) + extra

    ns_ext = struct.pack("<II", index["android"], index[ANDROID_NS])
    body += node_header(0x0100, ns_ext)

    def emit(el):
        line[0] += 1
        ns, tag = split_name(el.tag)
        attrs = []
        for key, value in el.attrib.items():
            ans, local = split_name(key)
            ns_idx = index[ANDROID_NS] if ans == ANDROID_NS else 0xFFFFFFFF
            if value in ("true", "false"):
                raw, dtype, data = 0xFFFFFFFF, TYPE_INT_BOOLEAN, \
                    0xFFFFFFFF if value == "true" else 0
            elif value.lstrip("-").isdigit():
                raw, dtype, data = 0xFFFFFFFF, TYPE_INT_DEC, int(value) & 0xFFFFFFFF
            elif value.startswith("@"):
                raw, dtype, data = 0xFFFFFFFF, TYPE_REFERENCE, resource_id(value)
            else:
                raw, dtype, data = index[value], TYPE_STRING, index[value]
            res_rank = ANDROID_ATTR_IDS.get(local, 0xFFFFFFFF) if ans == ANDROID_NS else 0xFFFFFFFF
            attrs.append((res_rank, index[local],
                          struct.pack("<IIIHBBI", ns_idx, index[local], raw, 8, 0, dtype, data)))
        # aapt sorts attributes by resource id; plain attributes go last.
        attrs.sort(key=lambda a: (a[0], a[1]))
        ext = struct.pack("<II", 0xFFFFFFFF if ns is None else index[ns], index[tag])
        ext += struct.pack("<HHHHHH", 20, 20, len(attrs), 0, 0, 0)
        ext += b"".join(a[2] for a in attrs)
        out = node_header(0x0102, ext)
        for child in el:
            out += emit(child)
        line[0] += 1
        out += node_header(0x0103, struct.pack("<II", 0xFFFFFFFF, index[tag]))
        return out

    body += emit(root)
    body += node_header(0x0101, ns_ext)
    return struct.pack("<HHI", 0x0003, 8, 8 + len(body)) + bytes(body)


def xml_oracle(xml_text):
    """(element, attribute, value) triples as a stock XML parser sees them."""
    root = ET.fromstring(xml_text)
    triples = []
    for el in root.iter():
        _, tag = split_name(el.tag)
        triples.append([tag, "", ""])
        for key, value in el.attrib.items():
            _, local = split_name(key)
            if value.startswith("@"):
                value = "@0x%08x" % resource_id(value)
            triples.append([tag, local, value])
    triples.sort()
    return triples


# ---------------------------------------------------------------------------
# DEX writer
# ---------------------------------------------------------------------------

NO_INDEX = 0xFFFFFFFF


def uleb(n):
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def mutf8(s):
    out = bytearray()
    for ch in s:
        c = ord(ch)
        if c == 0:
            out += b"\xc0\x80"
        elif c < 0x80:
            out.append(c)
        elif c < 0x800:
            out += bytes([0xC0 | (c >> 6), 0x80 | (c & 0x3F)])
        elif c < 0x10000:
            out += bytes([0xE0 | (c >> 12), 0x80 | ((c >> 6) & 0x3F), 0x80 | (c & 0x3F)])
        else:
            raise ValueError("supplementary characters not used in fixtures")
    return bytes(out)


def java_to_desc(name):
    return "L" + name.replace(".", "/") + ";"


def parse_proto(desc):
    """'(I[Ljava/lang/String;)V' -> (['I', '[Ljava/lang/String;'], 'V')."""
    assert desc.startswith("("), desc
    close = desc.index(")")
    params, i, body = [], 0, desc[1:close]
    while i < len(body):
        j = i
        while body[j] == "[":
            j += 1
        if body[j] == "L":
            j = body.index(";", j)
        params.append(body[i:j + 1])
        i = j + 1
    return params, desc[close + 1:]


def shorty_char(t):
    return "L" if t[0] in "L[" else t


def type_words(t):
    return 2 if t in ("J", "D") else 1


class MethodRef:
    def __init__(self, owner_desc, name, proto):
        self.owner, self.name, self.proto = owner_desc, name, proto

    def key(self):
        return (self.owner, self.name, self.proto)


def parse_call_target(text):
    """'com.x.Foo.bar(I)V' -> MethodRef."""
    paren = text.index("(")
    head, proto = text[:paren], text[paren:]
    dot = head.rindex(".")
    return MethodRef(java_to_desc(head[:dot]), head[dot + 1:], proto)


class Insn:
    """One encoded instruction: fixed size, encoding deferred until layout."""

    def __init__(self, size, encode, refs=()):
        self.size = size
        self.encode = encode      # (tables, addr, labels) -> list of units
        self.refs = refs          # ('string'|'type'|'method'|'field', value)


def u(op, hi=0):
    return (op & 0xFF) | ((hi & 0xFF) << 8)


def ins_10x(op):
    return Insn(1, lambda t, a, l: [u(op)])


def ins_11x(op, reg):
    return Insn(1, lambda t, a, l: [u(op, reg)])


def ins_11n(op, reg, lit):
    return Insn(1, lambda t, a, l: [u(op, (reg & 0xF) | ((lit & 0xF) << 4))])


def ins_12x(op, a, b):
    return Insn(1, lambda t, ad, l: [u(op, (a & 0xF) | ((b & 0xF) << 4))])


def ins_21c(op, reg, kind, value):
    return Insn(2, lambda t, a, l: [u(op, reg), t[kind][value]], [(kind, value)])


def ins_22c(op, a, b, kind, value):
    return Insn(2, lambda t, ad, l: [u(op, (a & 0xF) | ((b & 0xF) << 4)), t[kind][value]],
                [(kind, value)])


def ins_21s(op, reg, lit):
    return Insn(2, lambda t, a, l: [u(op, reg), lit & 0xFFFF])


def ins_31i(op, reg, lit):
    return Insn(3, lambda t, a, l: [u(op, reg), lit & 0xFFFF, (lit >> 16) & 0xFFFF])


def ins_51l(op, reg, lit):
    return Insn(5, lambda t, a, l: [u(op, reg)] + [(lit >> s) & 0xFFFF for s in (0, 16, 32, 48)])


def ins_22x(op, a, b):
    return Insn(2, lambda t, ad, l: [u(op, a), b])


def ins_32x(op, a, b):
    return Insn(3, lambda t, ad, l: [u(op), a, b])


def ins_23x(op, a, b, c):
    return Insn(2, lambda t, ad, l: [u(op, a), (b & 0xFF) | ((c & 0xFF) << 8)])


def ins_22b(op, a, b, lit):
    return Insn(2, lambda t, ad, l: [u(op, a), (b & 0xFF) | ((lit & 0xFF) << 8)])


def ins_22s(op, a, b, lit):
    return Insn(2, lambda t, ad, l: [u(op, (a & 0xF) | ((b & 0xF) << 4)), lit & 0xFFFF])


def ins_21t(op, reg, label):
    return Insn(2, lambda t, a, l: [u(op, reg), (l[label] - a) & 0xFFFF])


def ins_22t(op, ra, rb, label):
    return Insn(2, lambda t, a, l: [u(op, (ra & 0xF) | ((rb & 0xF) << 4)), (l[label] - a) & 0xFFFF])


def ins_10t(op, label):
    return Insn(1, lambda t, a, l: [u(op, (l[label] - a) & 0xFF)])


def ins_20t(label):
    return Insn(2, lambda t, a, l: [u(0x29), (l[label] - a) & 0xFFFF])


def ins_30t(label):
    return Insn(3, lambda t, a, l: [u(0x2A)] + [((l[label] - a) >> s) & 0xFFFF for s in (0, 16)])


def ins_31t(op, reg, label):
    return Insn(3, lambda t, a, l: [u(op, reg)] + [((l[label] - a) >> s) & 0xFFFF for s in (0, 16)])


def ins_35c(op, kind, value, regs):
    def enc(t, a, l):
        r = list(regs) + [0] * (5 - len(regs))
        return [u(op, ((len(regs) & 0xF) << 4) | (r[4] & 0xF)), t[kind][value],
                (r[0] & 0xF) | ((r[1] & 0xF) << 4) | ((r[2] & 0xF) << 8) | ((r[3] & 0xF) << 12)]
    return Insn(3, enc, [(kind, value)])


def ins_3rc(op, kind, value, first, count):
    return Insn(3, lambda t, a, l: [u(op, count), t[kind][value], first], [(kind, value)])


def ins_45cc(op, mref, proto, regs):
    def enc(t, a, l):
        r = list(regs) + [0] * (5 - len(regs))
        return [u(op, ((len(regs) & 0xF) << 4) | (r[4] & 0xF)), t["method"][mref],
                (r[0] & 0xF) | ((r[1] & 0xF) << 4) | ((r[2] & 0xF) << 8) | ((r[3] & 0xF) << 12),
                t["proto"][proto]]
    return Insn(4, enc, [("method", mref), ("proto", proto)])


class Label:
    def __init__(self, name):
        self.name = name
        self.size = 0
        self.refs = ()


class PackedSwitchPayload:
    """Placed after the code; `switch_label` names the switch instruction."""

    def __init__(self, switch_label, targets, first_key=0):
        self.switch_label, self.targets, self.first_key = switch_label, targets, first_key
        self.size = 4 + 2 * len(targets)
        self.refs = ()

    def encode(self, t, a, l):
        out = [0x0100, len(self.targets), self.first_key & 0xFFFF, (self.first_key >> 16) & 0xFFFF]
        base = l[self.switch_label]
        for target in self.targets:
            rel = (l[target] - base) & 0xFFFFFFFF
            out += [rel & 0xFFFF, rel >> 16]
        return out


class SparseSwitchPayload:
    def __init__(self, switch_label, cases):
        self.switch_label, self.cases = switch_label, cases
        self.size = 2 + 4 * len(cases)
        self.refs = ()

    def encode(self, t, a, l):
        out = [0x0200, len(self.cases)]
        for key, _ in self.cases:
            out += [key & 0xFFFF, (key >> 16) & 0xFFFF]
        base = l[self.switch_label]
        for _, target in self.cases:
            rel = (l[target] - base) & 0xFFFFFFFF
            out += [rel & 0xFFFF, rel >> 16]
        return out


class FillArrayPayload:
    def __init__(self, width, values):
        self.width, self.values = width, values
        nbytes = width * len(values)
        self.size = 4 + (nbytes + 1) // 2
        self.refs = ()

    def encode(self, t, a, l):
        raw = b"".join(v.to_bytes(self.width, "little", signed=True) for v in self.values)
        if len(raw) % 2:
            raw += b"\x00"
        out = [0x0300, self.width, len(self.values) & 0xFFFF, len(self.values) >> 16]
        out += list(struct.unpack("<%dH" % (len(raw) // 2), raw))
        return out


class Nop:
    size = 1
    refs = ()

    def encode(self, t, a, l):
        return [0x0000]


class MethodSpec:
    def __init__(self, owner, name, proto, access, body=None, registers=0, ins=0,
                 outs=0, tries=()):
        self.owner, self.name, self.proto = owner, name, proto
        self.access = access
        self.body = body            # list of Insn/Label/payload or None
        self.registers, self.ins, self.outs = registers, ins, outs
        self.tries = tries          # [(start_label, end_label, [(type_desc|None, label)])]

    @property
    def ref(self):
        return MethodRef(self.owner, self.name, self.proto)


class ClassSpec:
    def __init__(self, desc, super_desc, interfaces=(), access=0x1):
        self.desc, self.super, self.interfaces = desc, super_desc, list(interfaces)
        self.access = access
        self.methods = []
        self.fields = []   # (type_desc, name)


ACC_PUBLIC = 0x1
ACC_STATIC = 0x8
ACC_ABSTRACT = 0x400
ACC_CONSTRUCTOR = 0x10000


def lower_text_method(cls, method):
    """Lower one text-fixture method to Dalvik instructions.

    The shapes chosen here are the canonical lowering the C++ text frontend
    mirrors, so a binary fixture and its text transcription share offsets.
    """
    name, proto = method["name"], method["descriptor"]
    params, ret = parse_proto(proto)
    ins_words = 1 + sum(type_words(p) for p in params)
    if "insns" not in method:
        return MethodSpec(cls.desc, name, proto, ACC_PUBLIC | ACC_ABSTRACT)

    max_words = 0
    for text in method["insns"]:
        if text.startswith("call "):
            target = parse_call_target(text[5:])
            tp, _ = parse_proto(target.proto)
            max_words = max(max_words, 1 + sum(type_words(p) for p in tp))
    locals_ = 2
    registers = max(locals_ + ins_words, max_words)
    p0 = registers - ins_words

    body, payloads = [], []
    switch_count = [0]
    for text in method["insns"]:
        op, _, arg = text.partition(" ")
        if op == "call":
            target = parse_call_target(arg)
            tp, _ = parse_proto(target.proto)
            words = 1 + sum(type_words(p) for p in tp)
            in_ctor_chain = name == "<init>" and target.owner in (cls.super, cls.desc)
            if target.name == "<init>" and not in_ctor_chain:
                body.append(ins_21c(0x22, 1, "type", target.owner))
                regs = [1] + [1] * (words - 1)
                kind = 0x70
            else:
                regs = [p0] + [1] * (words - 1)
                if target.name == "<init>":
                    kind = 0x70
                elif target.owner == cls.super and target.name == name:
                    kind = 0x6F
                else:
                    kind = 0x6E
            if words <= 5:
                body.append(ins_35c(kind, "method", target.key(), regs))
            else:
                body.append(ins_3rc(kind + 6, "method", target.key(), 0, words))
        elif op == "return":
            if ret == "V":
                body.append(ins_10x(0x0E))
            elif ret.startswith("L"):
                body.append(ins_21c(0x22, 0, "type", ret))
                body.append(ins_11x(0x11, 0))
            elif ret.startswith("["):
                body.append(ins_21c(0x1A, 0, "string", ""))
                body.append(ins_11x(0x11, 0))
            elif ret in ("J", "D"):
                body.append(ins_21s(0x16, 0, 1))
                body.append(ins_11x(0x10, 0))
            else:
                body.append(ins_11n(0x12, 0, 1))
                body.append(ins_11x(0x0F, 0))
        elif op == "return-null":
            body.append(ins_11n(0x12, 0, 0))
            body.append(ins_11x(0x11, 0))
        elif op == "label":
            body.append(Label(arg))
        elif op == "branch":
            targets = arg.split()
            if len(targets) == 1:
                body.append(ins_20t(targets[0]))
            elif len(targets) == 2:
                body.append(ins_21t(0x38, p0, targets[1]))
                body.append(ins_20t(targets[0]))
            else:
                sw = "__switch%d" % switch_count[0]
                pl = "__payload%d" % switch_count[0]
                switch_count[0] += 1
                body.append(Label(sw))
                body.append(ins_31t(0x2B, p0, pl))
                body.append(ins_20t(targets[0]))
                payloads.append((pl, PackedSwitchPayload(sw, targets[1:])))
        else:
            raise ValueError("unknown insn %r" % text)
    for label, payload in payloads:
        if sum(i.size for i in body) % 2:
            body.append(Nop())
        body.append(Label(label))
        body.append(payload)
    access = ACC_PUBLIC | (ACC_CONSTRUCTOR if name == "<init>" else 0)
    return MethodSpec(cls.desc, name, proto, access, body, registers, ins_words, max_words)


def class_from_text(c):
    cls = ClassSpec(java_to_desc(c["name"]),
                    java_to_desc(c.get("super") or "java.lang.Object")
                    if c["name"] != "java.lang.Object" else None,
                    [java_to_desc(i) for i in c.get("interfaces", [])])
    for m in c.get("methods", []):
        spec = lower_text_method(cls, m)
        if spec.access & ACC_ABSTRACT:
            cls.access |= ACC_ABSTRACT
        cls.methods.append(spec)
    return cls


def build_dex(classes):
    strings, types, protos, methods, fields = set(), set(), set(), set(), set()

    def add_type(t):
        types.add(t)
        strings.add(t)

    def add_proto(p):
        params, ret = parse_proto(p)
        protos.add(p)
        add_type(ret)
        for x in params:
            add_type(x)
        strings.add("".join(shorty_char(x) for x in [ret] + params))

    def add_method(ref):
        owner, name, proto = ref
        methods.add(ref)
        add_type(owner)
        strings.add(name)
        add_proto(proto)

    def add_field(ref):
        owner, ftype, name = ref
        fields.add(ref)
        add_type(owner)
        add_type(ftype)
        strings.add(name)

    for cls in classes:
        add_type(cls.desc)
        if cls.super:
            add_type(cls.super)
        for i in cls.interfaces:
            add_type(i)
        for ftype, fname in cls.fields:
            add_field((cls.desc, ftype, fname))
        for m in cls.methods:
            add_method(m.ref.key())
            for item in (m.body or []):
                for kind, value in item.refs:
                    if kind == "string":
                        strings.add(value)
                    elif kind == "type":
                        add_type(value)
                    elif kind == "method":
                        add_method(value)
                    elif kind == "field":
                        add_field(value)
                    elif kind == "proto":
                        add_proto(value)
            for _, _, handlers in m.tries:
                for tdesc, _ in handlers:
                    if tdesc:
                        add_type(tdesc)

    def u16key(s):
        return s.encode("utf-16-be")

    string_list = sorted(strings, key=u16key)
    sidx = {s: i for i, s in enumerate(string_list)}
    type_list = sorted(types, key=lambda t: sidx[t])
    tidx = {t: i for i, t in enumerate(type_list)}

    def proto_key(p):
        params, ret = parse_proto(p)
        return (tidx[ret], [tidx[x] for x in params])

    proto_list = sorted(protos, key=proto_key)
    pidx = {p: i for i, p in enumerate(proto_list)}
    field_list = sorted(fields, key=lambda f: (tidx[f[0]], sidx[f[2]], tidx[f[1]]))
    fidx = {f: i for i, f in enumerate(field_list)}
    method_list = sorted(methods, key=lambda m: (tidx[m[0]], sidx[m[1]], pidx[m[2]]))
    midx = {m: i for i, m in enumerate(method_list)}
    tables = {"string": sidx, "type": tidx, "proto": pidx, "method": midx, "field": fidx}

    # Superclasses defined in this file must precede their subclasses.
    by_desc = {c.desc: c for c in classes}
    ordered, seen = [], set()

    def visit(c):
        if c.desc in seen:
            return
        seen.add(c.desc)
        for dep in [c.super] + c.interfaces:
            if dep in by_desc:
                visit(by_desc[dep])
        ordered.append(c)

    for c in sorted(classes, key=lambda c: c.desc):
        visit(c)

    header_size = 0x70
    off = header_size
    string_ids_off = off
    off += 4 * len(string_list)
    type_ids_off = off
    off += 4 * len(type_list)
    proto_ids_off = off
    off += 12 * len(proto_list)
    field_ids_off = off
    off += 8 * len(field_list)
    method_ids_off = off
    off += 8 * len(method_list)
    class_defs_off = off
    off += 32 * len(ordered)
    data_off = off

    data = bytearray()

    def pos():
        return data_off + len(data)

    def align4():
        while (data_off + len(data)) % 4:
            data.append(0)

    # code items
    code_offs = {}
    census = []
    code_count = 0
    for c in ordered:
        for m in c.methods:
            if m.body is None:
                continue
            align4()
            code_offs[m.ref.key()] = pos()
            code_count += 1
            labels, addr = {}, 0
            for item in m.body:
                if isinstance(item, Label):
                    labels[item.name] = addr
                addr += item.size
            units, addr = [], 0
            for item in m.body:
                if isinstance(item, Label):
                    continue
                enc = item.encode(tables, addr, labels)
                assert len(enc) == item.size, (m.name, item, enc)
                units += enc
                addr += item.size
            data += struct.pack("<HHHHII", m.registers, m.ins, m.outs, len(m.tries), 0, len(units))
            data += struct.pack("<%dH" % len(units), *units)
            if m.tries:
                if len(units) % 2:
                    data += b"\x00\x00"
                handler_blob = bytearray(uleb(len(m.tries)))
                handler_offs = []
                for _, _, handlers in m.tries:
                    handler_offs.append(len(handler_blob))
                    typed = [(t, l) for t, l in handlers if t]
                    catch_all = [l for t, l in handlers if not t]
                    size = len(typed)
                    if catch_all:
                        enc_size = -size
                    else:
                        enc_size = size
                    handler_blob += sleb(enc_size)
                    for t, l in typed:
                        handler_blob += uleb(tidx[t]) + uleb(labels[l])
                    if catch_all:
                        handler_blob += uleb(labels[catch_all[0]])
                for (start, end, _), hoff in zip(m.tries, handler_offs):
                    data += struct.pack("<IHH", labels[start], labels[end] - labels[start], hoff)
                data += handler_blob
            census.append({"class": c.desc, "method": m.name, "descriptor": m.proto,
                           "insns_size": len(units)})

    code_size_total = code_count
    code_section_off = min(code_offs.values()) if code_offs else 0

    # string data
    string_data_offs = []
    string_data_start = pos()
    for s in string_list:
        string_data_offs.append(pos())
        data += uleb(len(s.encode("utf-16-le")) // 2) + mutf8(s) + b"\x00"

    # type lists (proto params, interfaces)
    align4()
    type_list_offs = {}
    type_list_start = pos()

    def type_list_for(seq):
        key = tuple(seq)
        if not key:
            return 0
        if key not in type_list_offs:
            align4()
            type_list_offs[key] = pos()
            data.extend(struct.pack("<I", len(key)))
            for t in key:
                data.extend(struct.pack("<H", tidx[t]))
        return type_list_offs[key]

    for p in proto_list:
        type_list_for(parse_proto(p)[0])
    for c in ordered:
        type_list_for(c.interfaces)

    # class data
    class_data_offs = {}
    class_data_start = pos()
    for c in ordered:
        class_data_offs[c.desc] = pos()
        direct = [m for m in c.methods if m.name in ("<init>", "<clinit>") or m.access & ACC_STATIC]
        virtual = [m for m in c.methods if m not in direct]
        direct.sort(key=lambda m: midx[m.ref.key()])
        virtual.sort(key=lambda m: midx[m.ref.key()])
        fields_sorted = sorted(c.fields, key=lambda f: fidx[(c.desc, f[0], f[1])])
        data += uleb(0) + uleb(len(fields_sorted)) + uleb(len(direct)) + uleb(len(virtual))
        prev = 0
        for ftype, fname in fields_sorted:
            i = fidx[(c.desc, ftype, fname)]
            data += uleb(i - prev) + uleb(ACC_PUBLIC)
            prev = i
        for group in (direct, virtual):
            prev = 0
            for m in group:
                i = midx[m.ref.key()]
                data += uleb(i - prev) + uleb(m.access) + uleb(code_offs.get(m.ref.key(), 0))
                prev = i

    align4()
    map_off = pos()
    items = [(0x0000, 1, 0)]
    if string_list:
        items.append((0x0001, len(string_list), string_ids_off))
    if type_list:
        items.append((0x0002, len(type_list), type_ids_off))
    if proto_list:
        items.append((0x0003, len(proto_list), proto_ids_off))
    if field_list:
        items.append((0x0004, len(field_list), field_ids_off))
    if method_list:
        items.append((0x0005, len(method_list), method_ids_off))
    if ordered:
        items.append((0x0006, len(ordered), class_defs_off))
    if code_size_total:
        items.append((0x2001, code_size_total, code_section_off))
    if string_list:
        items.append((0x2002, len(string_list), string_data_start))
    if type_list_offs:
        items.append((0x1001, len(type_list_offs), type_list_start))
    if ordered:
        items.append((0x2000, len(ordered), class_data_start))
    items.append((0x1000, 1, map_off))
    data += struct.pack("<I", len(items))
    for t, n, o in items:
        data += struct.pack("<HHII", t, 0, n, o)

    out = bytearray(data_off)
    for i, s in enumerate(string_list):
        struct.pack_into("<I", out, string_ids_off + 4 * i, string_data_offs[i])
    for i, t in enumerate(type_list):
        struct.pack_into("<I", out, type_ids_off + 4 * i, sidx[t])
    for i, p in enumerate(proto_list):
        params, ret = parse_proto(p)
        shorty = "".join(shorty_char(x) for x in [ret] + params)
        struct.pack_into("<III", out, proto_ids_off + 12 * i, sidx[shorty], tidx[ret],
                         type_list_offs.get(tuple(params), 0))
    for i, (owner, ftype, fname) in enumerate(field_list):
        struct.pack_into("<HHI", out, field_ids_off + 8 * i, tidx[owner], tidx[ftype], sidx[fname])
    for i, (owner, name, proto) in enumerate(method_list):
        struct.pack_into("<HHI", out, method_ids_off + 8 * i, tidx[owner], pidx[proto], sidx[name])
    for i, c in enumerate(ordered):
        struct.pack_into("<IIIIIIII", out, class_defs_off + 32 * i, tidx[c.desc], c.access,
                         tidx[c.super] if c.super else NO_INDEX,
                         type_list_offs.get(tuple(c.interfaces), 0), NO_INDEX, 0,
                         class_data_offs[c.desc], 0)
    out += data
    file_size = len(out)
    struct.pack_into("<8s", out, 0, b"dex\n035\x00")
    struct.pack_into("<IIIIII", out, 32, file_size, header_size, 0x12345678, 0, 0, map_off)
    struct.pack_into("<II", out, 56, len(string_list), string_ids_off if string_list else 0)
    struct.pack_into("<II", out, 64, len(type_list), type_ids_off if type_list else 0)
    struct.pack_into("<II", out, 72, len(proto_list), proto_ids_off if proto_list else 0)
    struct.pack_into("<II", out, 80, len(field_list), field_ids_off if field_list else 0)
    struct.pack_into("<II", out, 88, len(method_list), method_ids_off if method_list else 0)
    struct.pack_into("<II", out, 96, len(ordered), class_defs_off if ordered else 0)
    struct.pack_into("<II", out, 104, file_size - data_off, data_off)
    out[12:32] = hashlib.sha1(bytes(out[32:])).digest()
    struct.pack_into("<I", out, 8, zlib.adler32(bytes(out[12:])) & 0xFFFFFFFF)

    class_census = []
    for c in ordered:
        class_census.append({
            "name": c.desc,
            "super": c.super,
            "methods": sorted(
                [{"name": m.name, "descriptor": m.proto, "has_code": m.body is not None}
                 for m in c.methods], key=lambda m: (m["name"], m["descriptor"])),
        })
    return bytes(out), {"classes": class_census, "code_items": census,
                        "method_ids": len(method_list)}


def sleb(n):
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if (n == 0 and not b & 0x40) or (n == -1 and b & 0x40):
            out.append(b)
            return bytes(out)
        out.append(b | 0x80)


# ---------------------------------------------------------------------------
# Hand-assembled DEX covering every instruction format
# ---------------------------------------------------------------------------

def opcode_tour_classes():
    owner = "Lcom/example/tour/Tour;"
    obj = "Ljava/lang/Object;"
    helper = (owner, "helper", "(IJ)V")
    wide_call = (owner, "many", "(IIIIII)V")
    poly = ("Ljava/lang/invoke/MethodHandle;", "invoke", "([Ljava/lang/Object;)Ljava/lang/Object;")
    field = (owner, "I", "count")
    L = Label
    body = [
        ins_10x(0x00),                       # nop
        ins_12x(0x01, 1, 2),                 # move
        ins_22x(0x02, 3, 4),                 # move/from16
        ins_32x(0x03, 5, 6),                 # move/16
        ins_12x(0x07, 0, 1),                 # move-object
        ins_22x(0x08, 0, 2),                 # move-object/from16
        ins_11n(0x12, 0, 0),                 # const/4 null
        ins_21s(0x13, 1, 1234),              # const/16
        ins_31i(0x14, 2, 0x12345678),        # const
        Insn(2, lambda t, a, l: [u(0x15, 3), 0x4120]),   # const/high16
        ins_21s(0x16, 4, -1),                # const-wide/16
        ins_31i(0x17, 4, 7),                 # const-wide/32
        ins_51l(0x18, 4, 0x0102030405060708),  # const-wide
        Insn(2, lambda t, a, l: [u(0x19, 4), 0x4000]),   # const-wide/high16
        ins_21c(0x1A, 0, "string", "hello"),  # const-string
        Insn(3, lambda t, a, l: [u(0x1B, 0), t["string"]["jumbo"], 0], [("string", "jumbo")]),
        ins_21c(0x1C, 0, "type", owner),     # const-class
        ins_11x(0x1D, 0),                    # monitor-enter
        ins_11x(0x1E, 0),                    # monitor-exit
        ins_21c(0x1F, 0, "type", obj),       # check-cast
        ins_22c(0x20, 1, 0, "type", owner),  # instance-of
        ins_12x(0x21, 1, 0),                 # array-length
        ins_21c(0x22, 0, "type", owner),     # new-instance
        ins_22c(0x23, 0, 1, "type", "[I"),   # new-array
        ins_35c(0x24, "type", "[I", [1, 2]),  # filled-new-array
        ins_3rc(0x25, "type", "[I", 1, 3),   # filled-new-array/range
        ins_31t(0x26, 0, "array_data"),      # fill-array-data
        ins_23x(0x2D, 1, 2, 3),              # cmpl-float
        ins_22t(0x32, 1, 2, "after_if"),     # if-eq
        ins_21t(0x39, 1, "after_if"),        # if-nez
        L("after_if"),
        ins_23x(0x44, 1, 0, 2),              # aget
        ins_23x(0x4B, 1, 0, 2),              # aput
        ins_22c(0x52, 1, 0, "field", field),  # iget
        ins_22c(0x59, 1, 0, "field", field),  # iput
        ins_21c(0x60, 1, "field", field),    # sget
        ins_21c(0x67, 1, "field", field),    # sput
        ins_35c(0x6E, "method", helper, [0, 1, 2, 3]),   # invoke-virtual
        ins_11x(0x0A, 1),                    # move-result
        ins_3rc(0x74, "method", wide_call, 0, 7),        # invoke-virtual/range
        ins_12x(0x7B, 1, 2),                 # neg-int
        ins_23x(0x90, 1, 2, 3),              # add-int
        ins_12x(0xB0, 1, 2),                 # add-int/2addr
        ins_22s(0xD0, 1, 2, 100),            # add-int/lit16
        ins_22b(0xD8, 1, 2, 5),              # add-int/lit8
        ins_45cc(0xFA, poly, "([Ljava/lang/Object;)Ljava/lang/Object;", [0, 1]),
        L("switch"),
        ins_31t(0x2B, 1, "packed"),          # packed-switch
        L("sswitch"),
        ins_31t(0x2C, 1, "sparse"),          # sparse-switch
        ins_10t(0x28, "tail"),               # goto
        L("case_a"),
        ins_30t("tail"),                     # goto/32
        L("case_b"),
        ins_20t("tail"),                     # goto/16
        L("tail"),
        ins_11x(0x27, 0),                    # throw
        L("handler"),
        ins_11x(0x0D, 0),                    # move-exception
        ins_10x(0x0E),                       # return-void
    ]
    size = sum(i.size for i in body)
    if size % 2:
        body.append(Nop())
    body += [L("packed"), PackedSwitchPayload("switch", ["case_a", "case_b"], 10)]
    body += [L("sparse"), SparseSwitchPayload("sswitch", [(-5, "case_a"), (1000, "tail")])]
    body += [L("array_data"), FillArrayPayload(4, [1, 2, 3])]
    cls = ClassSpec(owner, obj)
    cls.fields.append(("I", "count"))
    cls.methods.append(MethodSpec(owner, "tour", "(I)V", ACC_PUBLIC, body, registers=8,
                                  ins=2, outs=7,
                                  tries=[("switch", "tail", [("Ljava/lang/Exception;", "handler"),
                                                             (None, "handler")])]))
    cls.methods.append(MethodSpec(owner, "helper", "(IJ)V", ACC_PUBLIC,
                                  [ins_10x(0x0E)], registers=4, ins=4))
    cls.methods.append(MethodSpec(owner, "many", "(IIIIII)V", ACC_PUBLIC,
                                  [ins_10x(0x0E)], registers=7, ins=7))
    return [cls]


def diamond_classes():
    """if / two arms / join / return, written out by hand."""
    owner = "Lcom/example/shapes/Diamond;"
    L = Label
    body = [
        ins_21t(0x38, 2, "arm_b"),           # 0: if-eqz p0, arm_b
        ins_20t("join"),                     # 2: goto/16 join   (arm a)
        L("arm_b"),
        ins_11n(0x12, 0, 1),                 # 4: const/4 v0, 1  (arm b)
        L("join"),
        ins_12x(0x01, 1, 0),                 # 5: move v1, v0
        ins_11x(0x0F, 1),                    # 6: return v1
    ]
    cls = ClassSpec(owner, "Ljava/lang/Object;")
    cls.methods.append(MethodSpec(owner, "pick", "(Z)I", ACC_PUBLIC, body, registers=3, ins=2))
    return [cls]


# ---------------------------------------------------------------------------
# Manifests and APKs from text fixtures
# ---------------------------------------------------------------------------

def manifest_from_text(fx):
    ET.register_namespace("android", ANDROID_NS)
    a = "{%s}" % ANDROID_NS
    root = ET.Element("manifest", {"package": fx["package"], a + "versionCode": "1",
                                   a + "versionName": "1.0"})
    ET.SubElement(root, "uses-sdk", {a + "minSdkVersion": "21", a + "targetSdkVersion": "33"})
    app = ET.SubElement(root, "application", {a + "label": "@string/app_name",
                                              a + "icon": "@mipmap/ic_launcher"})
    for md in fx.get("meta_data", []):
        attrs = {a + "name": md["name"]}
        if "resource" in md:
            attrs[a + "resource"] = md["resource"]
        if "value" in md:
            attrs[a + "value"] = md["value"]
        ET.SubElement(app, "meta-data", attrs)
    for kind, key in (("activity", "activities"), ("service", "services")):
        for comp in fx.get(key, []):
            el = ET.SubElement(app, kind, {a + "name": comp["name"],
                                           a + "exported": "true" if comp.get("exported", True) else "false"})
            for action in comp.get("actions", []):
                filt = ET.SubElement(el, "intent-filter")
                ET.SubElement(filt, "action", {a + "name": action})
                if action == "android.media.action.MEDIA_PLAY_FROM_SEARCH":
                    ET.SubElement(filt, "category", {a + "name": "android.intent.category.DEFAULT"})
    ET.indent(root, "    ")
    return '<?xml version="1.0" encoding="utf-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def write(path, data, mode="wb"):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, mode) as f:
        f.write(data)


def write_json(path, obj):
    write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n", "w")


def make_zip(path, entries):
    """entries: list of (name, bytes, compress_type)."""
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as zf:
        for name, data, method in entries:
            info = zipfile.ZipInfo(name, ZIP_EPOCH)
            info.compress_type = method
            info.external_attr = 0o644 << 16
            with_dup_warning_suppressed(zf.writestr, info, data)
    write(path, buf.getvalue())
    return buf.getvalue()


def with_dup_warning_suppressed(fn, *args):
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fn(*args)


def zip_listing(path):
    """Oracle listing from the stdlib zipfile reader, central-directory order."""
    with zipfile.ZipFile(path) as zf:
        return [{"name": i.filename, "size": i.file_size, "method": i.compress_type}
                for i in zf.infolist()]


def apk_entries(manifest_xml, dex_blobs, extra=True):
    entries = [("AndroidManifest.xml", encode_axml(manifest_xml), zipfile.ZIP_DEFLATED)]
    for i, blob in enumerate(dex_blobs):
        name = "classes.dex" if i == 0 else "classes%d.dex" % (i + 1)
        entries.append((name, blob, zipfile.ZIP_DEFLATED))
    if extra:
        auto_desc = ('<automotiveApp><uses name="media"/></automotiveApp>')
        entries.append(("res/xml/automotive_app_desc.xml",
                        encode_axml(auto_desc), zipfile.ZIP_DEFLATED))
        entries.append(("resources.arsc", b"\x02\x00\x0c\x00" + bytes(64), zipfile.ZIP_STORED))
        entries.append(("META-INF/MANIFEST.MF",
                        b"Manifest-Version: 1.0\r\nCreated-By: fixtures\r\n\r\n",
                        zipfile.ZIP_DEFLATED))
    return entries


def load_text(name):
    with open(os.path.join(TEXT_DIR, name + ".json")) as f:
        return json.load(f)


def build_app(fx_name, out_dir, dex_split=None):
    fx = load_text(fx_name)
    manifest_xml = manifest_from_text(fx)
    write(os.path.join(MANIFEST_DIR, fx_name + ".xml"), manifest_xml, "w")
    classes = [class_from_text(c) for c in fx.get("classes", [])]
    if dex_split:
        groups, start = [], 0
        for n in dex_split:
            groups.append(classes[start:start + n])
            start += n
    else:
        groups = [classes] if classes else []
    blobs, censuses = [], []
    for g in groups:
        blob, census = build_dex(g)
        blobs.append(blob)
        censuses.append(census)
    apk = os.path.join(out_dir, fx_name + ".apk")
    make_zip(apk, apk_entries(manifest_xml, blobs))
    write_json(os.path.join(out_dir, fx_name + ".oracle.json"),
               {"listing": zip_listing(apk), "dex": censuses,
                "manifest": xml_oracle(manifest_xml)})
    return apk


CORPUS = {
    # name: seeded defects as (rule_id, component, callback-or-null)
    "media_missing_stop": [["MEDIA-missing-onStop", "com.example.tunes.TunesService", "onStop"]],
    "media_missing_skips": [["MEDIA-missing-onSkipToNext", "com.example.radio.RadioService", "onSkipToNext"],
                            ["MEDIA-missing-onSkipToPrevious", "com.example.radio.RadioService", "onSkipToPrevious"]],
    "media_empty_play": [["MEDIA-no-playback-logic", "com.example.pods.PodService", "onPlay"]],
    "media_two_services": [["MEDIA-missing-onPause", "com.example.duo.SecondService", "onPause"],
                           ["MEDIA-missing-onPlayFromMediaId", "com.example.duo.SecondService", "onPlayFromMediaId"]],
    "broken_app": [["UI-missing-onGetRoot", "com.example.music.MusicService", "onGetRoot"],
                   ["UI-missing-onLoadChildren", "com.example.music.MusicService", "onLoadChildren"]],
    "ui_null_root": [["UI-null-root-path", "com.example.stream.StreamService", "onGetRoot"]],
    "ui_partial_send": [["UI-missing-sendResult-path", "com.example.books.BookService", "onLoadChildren"]],
    "ui_missing_root_detach": [["UI-missing-onGetRoot", "com.example.late.LateService", "onGetRoot"]],
    "voice_no_filter": [["VOICE-missing-intent-filter", "com.example.quiet.QuietService", None]],
    "voice_no_search": [["VOICE-missing-onPlayFromSearch", "com.example.deaf.DeafService", "onPlayFromSearch"]],
    "voice_empty_search": [["VOICE-empty-search-handler", "com.example.mute.MuteService", "onPlayFromSearch"]],
    "voice_both_missing": [["VOICE-missing-intent-filter", "com.example.silent.SilentService", None],
                           ["VOICE-missing-onPlayFromSearch", "com.example.silent.SilentService", "onPlayFromSearch"]],
}


def main():
    # Standalone manifests written by hand.
    for name in sorted(os.listdir(MANIFEST_DIR)):
        if name.endswith(".src.xml"):
            base = name[:-len(".src.xml")]
            with open(os.path.join(MANIFEST_DIR, name)) as f:
                text = f.read()
            write(os.path.join(MANIFEST_DIR, base + ".axml"), encode_axml(text))
            write(os.path.join(MANIFEST_DIR, base + ".utf8.axml"), encode_axml(text, utf8=True))
            write_json(os.path.join(MANIFEST_DIR, base + ".oracle.json"), xml_oracle(text))

    # Standalone DEX files.
    for fx_name, src in (("broken_service", "broken_app"), ("fixed_service", "fixed_app")):
        fx = load_text(src)
        blob, census = build_dex([class_from_text(c) for c in fx["classes"]])
        write(os.path.join(DEX_DIR, fx_name + ".dex"), blob)
        write_json(os.path.join(DEX_DIR, fx_name + ".census.json"), census)
    for name, classes in (("opcode_tour", opcode_tour_classes()), ("diamond", diamond_classes()),
                          ("empty", [])):
        blob, census = build_dex(classes)
        write(os.path.join(DEX_DIR, name + ".dex"), blob)
        write_json(os.path.join(DEX_DIR, name + ".census.json"), census)
    for name in ("hierarchy",):
        fx = load_text(name)
        blob, census = build_dex([class_from_text(c) for c in fx["classes"]])
        write(os.path.join(DEX_DIR, name + ".dex"), blob)
        write_json(os.path.join(DEX_DIR, name + ".census.json"), census)

    # APKs.
    build_app("fixed_app", APK_DIR)
    build_app("media_complete", APK_DIR)
    build_app("broken_app", APK_DIR)
    build_app("multidex", APK_DIR, dex_split=[3, 2])
    build_app("phone_app", APK_DIR)

    # Manifest-only archive.
    auto_media = open(os.path.join(MANIFEST_DIR, "auto_media.src.xml")).read()
    make_zip(os.path.join(APK_DIR, "manifest_only.apk"),
             [("AndroidManifest.xml", encode_axml(auto_media), zipfile.ZIP_STORED)])
    write_json(os.path.join(APK_DIR, "manifest_only.oracle.json"),
               {"listing": zip_listing(os.path.join(APK_DIR, "manifest_only.apk"))})

    # Damaged archives.
    write(os.path.join(APK_DIR, "not_a_zip.apk"), b"this is plainly not a zip archive\n" * 4)
    make_zip(os.path.join(APK_DIR, "no_manifest.apk"),
             [("classes.dex", build_dex([])[0], zipfile.ZIP_DEFLATED)])
    good = make_zip(os.path.join(APK_DIR, "bad_crc.apk"),
                    [("AndroidManifest.xml", encode_axml(auto_media), zipfile.ZIP_STORED)])
    with zipfile.ZipFile(io.BytesIO(good)) as zf:
        info = zf.infolist()[0]
        data_start = info.header_offset + 30 + len(info.filename.encode())
    damaged = bytearray(good)
    damaged[data_start + 10] ^= 0xFF
    write(os.path.join(APK_DIR, "bad_crc.apk"), bytes(damaged))
    make_zip(os.path.join(APK_DIR, "bzip2_entry.apk"),
             [("AndroidManifest.xml", encode_axml(auto_media), zipfile.ZIP_BZIP2)])
    make_zip(os.path.join(APK_DIR, "duplicate_entry.apk"),
             [("AndroidManifest.xml", b"\x00" * 8, zipfile.ZIP_STORED),
              ("AndroidManifest.xml", encode_axml(auto_media), zipfile.ZIP_DEFLATED)])
    write_json(os.path.join(APK_DIR, "duplicate_entry.oracle.json"),
               {"listing": zip_listing(os.path.join(APK_DIR, "duplicate_entry.apk"))})

    # Seeded corpus.
    census = {}
    for name, defects in sorted(CORPUS.items()):
        build_app(name, CORPUS_DIR)
        census[name + ".apk"] = defects
    write_json(os.path.join(CORPUS_DIR, "census.json"), census)
    write_json(os.path.join(HERE, "resource_ids.json"),
               {k: "0x%08x" % v for k, v in sorted(RESOURCE_IDS.items())})
    return 0


if __name__ == "__main__":
    sys.exit(main())
