#!/usr/bin/env python3
"""Cut small WordNet 3.0 noun fixtures out of a full database.

Writes two fixtures in the original index.noun/data.noun line grammar:

  senses/   every synset listed on the index lines of the seed lemmas
            (message, suggestion, trace, hypnotism and the first lemma of
            each direct hyponym of message.n.02), so sense numbers such as
            direction.n.06 resolve exactly as in the full release.
  subtree/  message.n.02 and its direct hyponyms only, with no index lines.

Pointers whose target is outside a fixture are dropped and the pointer count
is rewritten; offsets keep their original values.
"""

import argparse
import os

ROOT_OFFSET = "06598915"  # message.n.02 in WordNet 3.0
SEED_LEMMAS = ["message", "suggestion", "trace", "hypnotism"]


def read_lines(path):
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    header = [l for l in lines if l.startswith("  ")]
    body = [l for l in lines if l and not l.startswith("  ")]
    return header, body


def parse_index(body):
    index = {}
    for line in body:
        f = line.split()
        n, pc = int(f[2]), int(f[3])
        index[f[0]] = (line, f[6 + pc:6 + pc + n])
    return index


def split_data(line):
    head, gloss = line.split(" | ", 1)
    f = head.split()
    w = int(f[3], 16)
    lemmas = [f[4 + 2 * i] for i in range(w)]
    p = int(f[4 + 2 * w])
    ptrs = [f[5 + 2 * w + 4 * i:9 + 2 * w + 4 * i] for i in range(p)]
    rest = f[5 + 2 * w + 4 * p:]
    return f[:4 + 2 * w], lemmas, ptrs, rest, gloss


def restrict(line, keep):
    prefix, _, ptrs, rest, gloss = split_data(line)
    kept = [p for p in ptrs if p[2] != "n" or p[1] in keep]
    kept = [p for p in kept if p[2] == "n"]
    fields = prefix + ["%03d" % len(kept)] + [x for p in kept for x in p] + rest
    return " ".join(fields) + " | " + gloss


def write(dirname, header, index_lines, data, offsets):
    os.makedirs(dirname, exist_ok=True)
    with open(os.path.join(dirname, "index.noun"), "w", encoding="utf-8") as fh:
        for line in header + index_lines:
            fh.write(line + "\n")
    keep = set(offsets)
    with open(os.path.join(dirname, "data.noun"), "w", encoding="utf-8") as fh:
        for line in header:
            fh.write(line + "\n")
        for off in sorted(offsets):
            fh.write(restrict(data[off], keep) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("wordnet_dir")
    ap.add_argument("out_dir")
    args = ap.parse_args()

    header, index_body = read_lines(os.path.join(args.wordnet_dir, "index.noun"))
    _, data_body = read_lines(os.path.join(args.wordnet_dir, "data.noun"))
    index = parse_index(index_body)
    data = {l[:8]: l for l in data_body}

    hypo = [p[1] for p in split_data(data[ROOT_OFFSET])[2] if p[0] == "~"]
    subtree = [ROOT_OFFSET] + hypo
    write(os.path.join(args.out_dir, "wordnet_subtree"), header, [], data, subtree)

    lemmas = list(SEED_LEMMAS)
    for off in hypo:
        first = split_data(data[off])[1][0].lower()
        if first not in lemmas:
            lemmas.append(first)
    offsets = set()
    for lemma in lemmas:
        offsets.update(index[lemma][1])
    index_lines = [index[l][0].rstrip() for l in sorted(lemmas)]
    write(os.path.join(args.out_dir, "wordnet_senses"), header, index_lines, data, offsets)


if __name__ == "__main__":
    main()
