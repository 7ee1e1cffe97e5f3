#!/usr/bin/env python3
"""Convert a plain-text Roget's Thesaurus (1911 edition, as distributed by
Project Gutenberg) to the thesaurus file format read by cn_bracket:

    <id>\t<name>\t<comma-separated single-word nouns>

Expected input shape: each category opens with a header such as

    #103. Fewness. -- N. fewness &c. adj.; paucity, scarcity; handful; ...

followed by paragraphs introduced by part-of-speech markers (N., V., Adj.,
Adv., Phr.). Only the N. paragraphs are kept, only single-word entries
survive, and cross-references ("&c.", "&c. 34") and bracketed notes are
dropped. The parse is heuristic: check the category count (1043 expected)
and spot-check a few entries after converting.

usage: roget1911_to_tsv.py roget.txt > thesaurus.tsv
"""
import re
import sys

HEADER = re.compile(r"^\s*#(\d+)[a-z]?\.\s*([^.\-—]+?)\s*\.\s*(.*)$")
POS = re.compile(r"(?:^|\s|--|—)(N|V|Adj|Adv|Phr|Int)\.\s")


def noun_entries(body):
    out = []
    pieces = POS.split(" " + body)
    # split() yields [prefix, tag, text, tag, text, ...]
    for tag, text in zip(pieces[1::2], pieces[2::2]):
        if tag != "N":
            continue
        text = re.sub(r"\[.*?\]|\(.*?\)", " ", text)
        text = re.sub(r"&c\.?(\s*(adj|v|n|adv)\.)?(\s*\d+[a-z]?)?", " ", text)
        for item in re.split(r"[,;:]", text):
            word = item.strip().strip(".").strip()
            if re.fullmatch(r"[A-Za-z]+", word):
                out.append(word.lower())
    return out


def main():
    text = open(sys.argv[1], encoding="utf-8", errors="replace").read()
    categories = {}
    current = None
    for line in text.splitlines():
        m = HEADER.match(line)
        if m:
            cid = int(m.group(1))
            current = None
            if cid in categories:
                continue  # sub-entries such as #103a fold into the first
            current = categories[cid] = [m.group(2).strip(), [m.group(3)]]
        elif current is not None:
            current[1].append(line)
    for cid in sorted(categories):
        name, body = categories[cid]
        nouns = list(dict.fromkeys(noun_entries(" ".join(body))))
        if nouns:
            sys.stdout.write(f"{cid}\t{name}\t{', '.join(nouns)}\n")
    sys.stderr.write(f"{len(categories)} categories\n")


if __name__ == "__main__":
    main()
