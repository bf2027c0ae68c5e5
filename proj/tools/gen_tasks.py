#!/usr/bin/env python3
"""Writes the task corpus under tasks/. Outputs come from the Python
reference functions below, not from the solver's evaluator."""
import os
import random

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tasks")


def q(s):
    return '"' + s.replace('"', '""') + '"'


def string_task(path, comment, params, consts, ints, examples, fn):
    ps = " ".join(f"({p} String)" for p in params)
    leaves = " ".join(params + [q(c) for c in consts])
    ilits = " ".join(str(i) for i in ints)
    lines = [f"; {comment}", "(set-logic SLIA)", f"(synth-fun f ({ps}) String",
             "  ((S String) (I Int))",
             f"  ((S String ({leaves} (str.++ S S) (str.replace S S S) (str.at S I) (str.substr S I I)))",
             f"   (I Int ({ilits} (+ I I) (- I I) (str.len S)))))"]
    for ex in examples:
        args = ex if isinstance(ex, tuple) else (ex,)
        lines.append(f"(constraint (= (f {' '.join(q(a) for a in args)}) {q(fn(*args))}))")
    lines.append("(check-synth)")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def bv_task(path, comment, params, w, consts, examples, fn):
    m = (1 << w) - 1
    lit = lambda v: f"#x{v & m:0{w // 4}x}"
    sort = f"(_ BitVec {w})"
    ps = " ".join(f"({p} {sort})" for p in params)
    leaves = " ".join(params + [lit(c) for c in consts])
    ops = " ".join(f"({o} S)" for o in ["bvnot", "bvneg"]) + " " + \
        " ".join(f"({o} S S)" for o in ["bvand", "bvor", "bvxor", "bvadd", "bvsub", "bvmul", "bvlshr", "bvshl"])
    lines = [f"; {comment}", "(set-logic BV)", f"(synth-fun f ({ps}) {sort}",
             f"  ((S {sort} ({leaves} {ops}))))"]
    for ex in examples:
        args = ex if isinstance(ex, tuple) else (ex,)
        lines.append(f"(constraint (= (f {' '.join(lit(a) for a in args)}) {lit(fn(*args) & m)}))")
    lines.append("(check-synth)")
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


# SMT-LIB string semantics
def at(s, i):
    return s[i] if 0 <= i < len(s) else ""


def substr(s, i, n):
    if i < 0 or i >= len(s) or n <= 0:
        return ""
    return s[i:i + n]


def replace(s, t, u):
    if t == "":
        return u + s
    k = s.find(t)
    return s if k < 0 else s[:k] + u + s[k + len(t):]


NAMES = ["Alice", "Bob", "Carmen", "Dmitri", "Eve", "Farid", "Grace", "Hiro"]
SURNAMES = ["Smith", "Jones", "Okafor", "Larsen", "Novak", "Tanaka", "Moreau", "Silva"]
WORDS = ["alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel"]

STRING_TASKS = [
    ("prefix_title", "prepend a title", ["x"], ["Dr. ", " "], [0, 1], NAMES[:5], lambda x: "Dr. " + x),
    ("suffix_bang", "append an exclamation mark", ["x"], ["!", "?"], [0, 1], WORDS[:5], lambda x: x + "!"),
    ("parenthesize", "wrap in parentheses", ["x"], ["(", ")", " "], [0, 1], WORDS[:5], lambda x: "(" + x + ")"),
    ("first_char", "first character", ["x"], [" "], [0, 1], NAMES[:5], lambda x: at(x, 0)),
    ("first_three", "first three characters", ["x"], [" "], [0, 1, 3], WORDS[:5], lambda x: substr(x, 0, 3)),
    ("drop_first", "drop the first character", ["x"], [" "], [0, 1], WORDS[:5], lambda x: substr(x, 1, len(x))),
    ("last_char", "last character", ["x"], [" "], [0, 1], WORDS[:5], lambda x: at(x, len(x) - 1)),
    ("dash_to_space", "first dash becomes a space", ["x"], ["-", " ", "_"], [0, 1],
     ["a-b", "new-york", "x-y-z", "top-down", "re-do"], lambda x: replace(x, "-", " ")),
    ("strip_inc", "remove the company suffix", ["x"], [" Inc", " Ltd", ""], [0, 1],
     ["Acme Inc", "Globex Inc", "Initech Inc", "Umbrella Inc"], lambda x: replace(x, " Inc", "")),
    ("phone_digits", "remove both dashes", ["x"], ["-", "", " "], [0, 1],
     ["555-123-4567", "800-555-0199", "212-867-5309", "415-555-2671"],
     lambda x: replace(replace(x, "-", ""), "-", "")),
    ("full_name", "first and last name", ["x", "y"], [" ", ", "], [0, 1],
     list(zip(NAMES[:5], SURNAMES[:5])), lambda x, y: x + " " + y),
    ("last_comma_first", "last name, first name", ["x", "y"], [" ", ", "], [0, 1],
     list(zip(NAMES[2:7], SURNAMES[2:7])), lambda x, y: y + ", " + x),
    ("initials", "two initials", ["x", "y"], [".", " "], [0, 1],
     list(zip(NAMES[:5], SURNAMES[3:8])), lambda x, y: at(x, 0) + at(y, 0)),
    ("double", "repeat the input", ["x"], [" "], [0, 1], ["ab", "xyz", "q", "hey"], lambda x: x + x),
    ("country_code", "add a dialing prefix", ["x"], ["+1 ", "+44 ", " "], [0, 1],
     ["555 0100", "555 0199", "212 5550", "617 5551"], lambda x: "+1 " + x),
    ("last_two", "last two characters", ["x"], [" "], [0, 1, 2], WORDS[:5], lambda x: substr(x, len(x) - 2, 2)),
    ("com_to_org", "switch the domain suffix", ["x"], [".com", ".org", "."], [0, 1],
     ["a.com", "example.com", "shop.com", "news.com"], lambda x: replace(x, ".com", ".org")),
    ("middle_three", "characters two to four", ["x"], [" "], [0, 1, 3], WORDS[:5], lambda x: substr(x, 1, 3)),
    ("year_short", "two-digit year with apostrophe", ["x"], ["'", "19", "20"], [0, 1, 2],
     ["1999", "2004", "1987", "2021", "1975"], lambda x: "'" + substr(x, 2, 2)),
    ("brackets", "square brackets become parentheses", ["x"], ["[", "]", "(", ")"], [0, 1],
     ["[a]", "f[x]", "[12]", "v[i]"], lambda x: replace(replace(x, "[", "("), "]", ")")),
    ("greeting", "greet by name", ["x"], ["Hello, ", "!", " "], [0, 1], NAMES[3:8], lambda x: "Hello, " + x + "!"),
    ("first_word_of_two", "text before the space", ["x"], [" ", ""], [0, 1],
     ["ab cd", "xy zw", "po pl", "ok go"], lambda x: substr(x, 0, 2)),
    ("tag_html", "wrap in a bold tag", ["x"], ["<b>", "</b>"], [0, 1], WORDS[:4], lambda x: "<b>" + x + "</b>"),
    ("swap_order", "second argument then first", ["x", "y"], [" ", "-"], [0, 1],
     list(zip(WORDS[:4], WORDS[4:8])), lambda x, y: y + "-" + x),
]

MICRO_STRING = [
    ("m_suffix", "append a suffix", ["x"], [".txt", "."], [0, 1], ["a", "notes", "data", "log"], lambda x: x + ".txt"),
    ("m_drop_city", "remove the trailing word", ["x"], [" City", " Town", ""], [0, 1],
     ["Rennes City", "Lyon City", "Dodge City", "Quebec City"], lambda x: replace(x, " City", "")),
    ("m_first_two", "first two characters", ["x"], [" "], [0, 1, 2], WORDS[:4], lambda x: substr(x, 0, 2)),
    ("m_join", "join with a dash", ["x", "y"], ["-", " "], [0, 1],
     list(zip(WORDS[:4], WORDS[4:8])), lambda x, y: x + "-" + y),
    ("m_quote", "wrap in quotes", ["x"], ["'", '"'], [0, 1], WORDS[:4], lambda x: "'" + x + "'"),
]


def hd(w):
    m = (1 << w) - 1
    return [
        ("hd_turn_off_rightmost", "clear the lowest set bit", ["x"], [0, 1], lambda x: x & (x - 1)),
        ("hd_turn_on_rightmost_zero", "set the lowest clear bit", ["x"], [0, 1], lambda x: x | (x + 1)),
        ("hd_isolate_rightmost", "keep only the lowest set bit", ["x"], [0, 1], lambda x: x & (-x)),
        ("hd_isolate_rightmost_zero", "mark the lowest clear bit", ["x"], [0, 1], lambda x: ~x & (x + 1)),
        ("hd_trailing_mask", "mask up to the lowest set bit", ["x"], [0, 1], lambda x: x ^ (x - 1)),
        ("hd_floor_avg", "average without overflow", ["x", "y"], [0, 1],
         lambda x, y: (x & y) + (((x ^ y) & m) >> 1)),
        ("hd_times_five", "multiply by five", ["x"], [0, 1, 5], lambda x: x * 5),
        ("hd_mask_low_byte", "keep the low nibble and set bit 0", ["x"], [0, 1, 0xf], lambda x: (x & 0xf) | 1),
    ]


def inputs(rng, w, n, arity):
    m = (1 << w) - 1
    special = [0, 1, m, 1 << (w - 1), 0x5a & m]
    xs = []
    seen = set()
    while len(xs) < n:
        vals = tuple((special[len(xs)] if len(xs) < len(special) and arity == 1 else rng.randrange(1 << w))
                     for _ in range(arity))
        if vals not in seen:
            seen.add(vals)
            xs.append(vals if arity > 1 else vals[0])
    return xs


def main():
    rng = random.Random(7)
    for sub in ["strings", "bitvectors", "micro"]:
        os.makedirs(os.path.join(ROOT, sub), exist_ok=True)
    for name, comment, params, consts, ints, exs, fn in STRING_TASKS:
        string_task(os.path.join(ROOT, "strings", name + ".sl"), comment, params, consts, ints, exs, fn)
    for name, comment, params, consts, ints, exs, fn in MICRO_STRING:
        string_task(os.path.join(ROOT, "micro", name + ".sl"), comment, params, consts, ints, exs, fn)
    for name, comment, params, consts, fn in hd(32):
        bv_task(os.path.join(ROOT, "bitvectors", name + ".sl"), comment, params, 32, consts,
                inputs(rng, 32, 8, len(params)), fn)
    for name, comment, params, consts, fn in hd(8)[:5]:
        bv_task(os.path.join(ROOT, "micro", name.replace("hd_", "m_") + ".sl"), comment, params, 8, consts,
                inputs(rng, 8, 6, len(params)), fn)


if __name__ == "__main__":
    main()
