"""Regenerates the synthetic coverage fixture under crates/core/data/."""

import random
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "crates" / "core" / "data"
rng = random.Random(17961)

MISRA_POOL = [f"R.{a}.{b}" for a, b in [
    (1, 3), (2, 1), (8, 13), (9, 1), (10, 1), (10, 3), (11, 3), (11, 8), (12, 2), (13, 2),
    (14, 1), (17, 2), (17, 4), (17, 5), (18, 1), (18, 2), (18, 6), (19, 1), (20, 4), (21, 1),
    (21, 2), (21, 12), (22, 1), (22, 2), (22, 4), (22, 5), (22, 6),
]] + ["D.4.1", "D.4.7", "D.4.11", "D.4.12"]
BANS = ["BAN.21_3", "BAN.21_5", "BAN.21_6", "BAN.21_8", "R.21.4", "R.21.7", "R.21.9", "R.21.10"]
SEC = [
    "SEC.extdata.1", "SEC.sizeof.1", "SEC.ctype.1", "SEC.memcmp.1", "SEC.memcmp.2", "SEC.memcmp.3",
    "SEC.env.1", "SEC.env.2", "SEC.string.1", "SEC.string.2", "SEC.eof.1", "SEC.errno.1",
    "SEC.errno.2", "SEC.errno.3",
]


def pick(pool, lo=1, hi=2):
    return ",".join(sorted(rng.sample(pool, rng.randint(lo, hi))))


def ts_rows():
    ids = [f"R{i:02d}" for i in range(1, 47)]
    # (MC3 kind, MC3_AMD1 kind, count)
    plan = [
        ("explicit", "explicit", 22),
        ("implicit", "explicit", 4),
        ("implicit", "implicit", 3),
        ("restrictive", "explicit", 3),
        ("restrictive", "restrictive", 8),
        ("broad", "explicit", 2),
        ("none", "explicit", 4),
    ]
    kinds = [pair for a, b, n in plan for pair in [(a, b)] * n]
    rng.shuffle(kinds)
    rows = []
    for rid, (k3, k31) in zip(ids, kinds):
        refs3 = {"explicit": pick(MISRA_POOL), "implicit": pick(MISRA_POOL), "restrictive": pick(BANS, 1, 1),
                 "broad": pick(MISRA_POOL, 1, 1), "none": "-"}[k3]
        if k31 == k3:
            refs31 = refs3
        else:
            refs31 = ",".join(sorted(set(([] if refs3 == "-" else refs3.split(",")) + [rng.choice(SEC)])))
        rows.append(("TS17961", rid, "MC3", k3, refs3))
        rows.append(("TS17961", rid, "MC3_AMD1", k31, refs31))
    return ids, rows


def cert_rows():
    ids = [f"CERT-{i:03d}" for i in range(1, 99)]
    kinds = ["c11"] * 13 + ["explicit"] * 41 + ["implicit"] * 17 + ["restrictive"] * 22 + ["none"] * 5
    rng.shuffle(kinds)
    # The rule withdrawn in the later edition is restrictive.
    j = kinds.index("restrictive", 0)
    k = ids.index("CERT-057")
    kinds[j], kinds[k] = kinds[k], kinds[j]
    assert kinds[k] == "restrictive"

    def refs(kind):
        return {"c11": "-", "none": "-", "explicit": pick(MISRA_POOL + SEC),
                "implicit": pick(MISRA_POOL), "restrictive": pick(BANS, 1, 1)}[kind]

    base = [(rid, kind, refs(kind)) for rid, kind in zip(ids, kinds)]
    later = [r for r in base if r[0] != "CERT-057"] + [("CERT-099", "c11", "-"), ("CERT-100", "explicit", pick(SEC))]
    rows = [("CERTC2014", rid, "MC3_AMD1", k, g) for rid, k, g in base]
    rows += [("CERTC2016", rid, "MC3_AMD1", k, g) for rid, k, g in later]
    return ids, [r[0] for r in later], rows


def main():
    ts_ids, ts = ts_rows()
    c14_ids, c16_ids, cert = cert_rows()
    header = (
        "# Synthetic coverage fixture.\n"
        "#\n"
        "# Per-kind totals match published aggregate figures for each ruleset and\n"
        "# profile. Individual rows are placeholders: rule ids are sequence numbers\n"
        "# and the classification of any single rule is fixture data, not a\n"
        "# transcription of an official mapping. The CERT C totals were published\n"
        "# as preliminary, unofficial data.\n"
        "#\n"
        "# Format: ruleset | rule_id | profile | kind | guidelines (comma-separated, or -)\n"
    )
    lines = [header]
    for r in ts + cert:
        lines.append(" | ".join(r) + "\n")
    (DATA / "mappings.txt").write_text("".join(lines))

    cat = ["# Rule catalog for the synthetic coverage fixture.\n# Format: ruleset | rule_id | title\n"]
    cat += [f"TS17961 | {r} | Secure coding rule {r[1:]}\n" for r in ts_ids]
    cat += [f"CERTC2014 | {r} | CERT C rule {r[5:]}\n" for r in c14_ids]
    cat += [f"CERTC2016 | {r} | CERT C rule {r[5:]}\n" for r in c16_ids]
    (DATA / "catalog.txt").write_text("".join(cat))


if __name__ == "__main__":
    main()
