#!/usr/bin/env python3
"""Generate the small synthetic demo corpus under data/demo/.

Deterministic (fixed seed); rerun after changing the shape of the demo
data. The demo corpus is for CLI/API/dashboard exploration only and
carries no real annotations.
"""

import json
import random
from datetime import date, timedelta
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "demo"

CATEGORIES = [
    (101, "immigration quota", "Controlling Migration"),
    (102, "ceiling/upper limit", "Controlling Migration"),
    (104, "isolation/immigration stop", "Controlling Migration"),
    (105, "border controls", "Controlling Migration"),
    (106, "border fence", "Controlling Migration"),
    (109, "fight smugglers", "Controlling Migration"),
    (110, "asylum law", "Controlling Migration"),
    (111, "sea rescue", "Controlling Migration"),
    (202, "refugee accommodation", "Residency"),
    (207, "deportations", "Residency"),
    (215, "transit zones", "Residency"),
    (309, "care", "Integration"),
    (401, "violence against migrants", "Domestic security"),
    (501, "EU solution", "Foreign Policy"),
    (503, "combat causes of flight", "Foreign Policy"),
    (504, "safe country of origin", "Foreign Policy"),
    (507, "cooperation with transit countries", "Foreign Policy"),
    (508, "military intervention", "Foreign Policy"),
    (702, "humanitarian rights", "Society"),
    (703, "xenophobia", "Society"),
    (705, "refugees welcome", "Society"),
    (709, "right-wing radicalism", "Society"),
    (711, "islam", "Society"),
    (805, "additional financing", "Procedures"),
    (812, "accelerated procedure", "Procedures"),
]

ACTORS = [
    ("Angela Merkel", "PER", "CDU", ["Merkel", "Kanzlerin", "A. Merkel"]),
    ("Thomas de Maizière", "PER", "CDU", ["de Maizière", "Innenminister"]),
    ("Horst Seehofer", "PER", "CSU", ["Seehofer"]),
    ("Sigmar Gabriel", "PER", "SPD", ["Gabriel"]),
    ("Jean-Claude Juncker", "PER", None, ["Juncker"]),
    ("Winfried Kretschmann", "PER", "Grüne", ["Kretschmann"]),
    ("Markus Söder", "PER", "CSU", ["Söder"]),
    ("Bundesregierung", "ORG", None, ["Regierung"]),
    ("CSU", "ORG", "CSU", []),
    ("SPD", "ORG", "SPD", []),
    ("EU", "ORG", None, ["Europäische Union"]),
    ("Pegida", "ORG", None, []),
    ("Pro Asyl", "ORG", None, []),
]

SNIPPETS = {
    101: "fordert eine Quote für die Verteilung der Flüchtlinge",
    102: "will eine Obergrenze für die Zuwanderung",
    104: "setzt auf Abschottung gegen weitere Zuwanderung",
    105: "verlangt strengere Grenzkontrollen an der Grenze",
    106: "bringt einen Grenzzaun ins Gespräch",
    109: "will die Schlepper entschlossen bekämpfen",
    110: "fordert ein schärferes Asylrecht",
    111: "verlangt eine europäische Seenotrettung im Mittelmeer",
    202: "verlangt mehr Unterkünfte für Flüchtlinge",
    207: "fordert konsequente Abschiebungen",
    215: "schlägt Transitzonen an der Grenze vor",
    309: "fordert bessere medizinische Versorgung",
    401: "verurteilt Gewalt gegen Migranten",
    501: "wirbt für eine EU-Lösung mit festen Quoten",
    503: "will Fluchtursachen in den Herkunftsländern bekämpfen",
    504: "will weitere sichere Herkunftsstaaten festlegen",
    507: "setzt auf Zusammenarbeit mit der Türkei",
    508: "erwägt einen Militäreinsatz gegen Schlepperboote",
    702: "betont die humanitäre Verantwortung Deutschlands",
    703: "warnt vor wachsender Fremdenfeindlichkeit",
    705: "steht zur Willkommenskultur",
    709: "warnt vor Rechtsradikalismus",
    711: "äußert sich zur Rolle des Islam",
    805: "verlangt zusätzliche Mittel vom Bund",
    812: "will schnellere Asylverfahren",
}

# monthly intensity loosely following the debate's fall peak
MONTH_WEIGHTS = {1: 5, 2: 3, 3: 3, 4: 5, 5: 4, 6: 2, 7: 3, 8: 6, 9: 11,
                 10: 9, 11: 7, 12: 4}


def main() -> None:
    rng = random.Random(20150101)
    OUT.mkdir(parents=True, exist_ok=True)

    with open(OUT / "codebook.csv", "w", encoding="utf-8") as fh:
        fh.write("code,label,major,description,example\n")
        for code, label, desc in CATEGORIES:
            fh.write(f"{code},{label},{(code // 100) * 100},{desc},\n")

    with open(OUT / "actor_mapping.csv", "w", encoding="utf-8") as fh:
        fh.write("surface,canonical,kind,party\n")
        for name, kind, party, surfaces in ACTORS:
            fh.write(f"{name},{name},{kind},{party or ''}\n")
            for surface in surfaces:
                fh.write(f"{surface},{name},{kind},{party or ''}\n")

    # actors lean pro or contra; polarity flips occasionally so conflict
    # projections stay interesting. Each actor returns to a few signature
    # categories so 2-slice windows keep structure.
    stance = {name: rng.random() for name, _, _, _ in ACTORS}
    all_codes = [c for c, _, _ in CATEGORIES]
    signature = {name: rng.sample(all_codes, 5) for name, _, _, _ in ACTORS}
    lines = []
    record_id = 0
    for month, weight in MONTH_WEIGHTS.items():
        for _ in range(weight * 8):
            day = date(2015, month, 1) + timedelta(days=rng.randrange(28))
            name, kind, party, surfaces = rng.choice(ACTORS)
            n_cats = rng.choice([1, 1, 1, 2])
            pool = signature[name] if rng.random() < 0.75 else all_codes
            codes = rng.sample(pool, n_cats)
            polarity = "+" if rng.random() < 0.35 + 0.5 * stance[name] else "-"
            surface = rng.choice(surfaces) if surfaces and rng.random() < 0.7 \
                else name
            text = f"{surface} {SNIPPETS[codes[0]]}."
            if n_cats == 2:
                text += f" Zugleich {SNIPPETS[codes[1]]}."
            record_id += 1
            lines.append(json.dumps({
                "record_id": f"demo-{record_id:04d}",
                "doc_id": f"taz-{day.isoformat()}-{rng.randrange(4)}",
                "date": day.isoformat(),
                "span_text": text,
                "categories": codes,
                "polarity": polarity,
                "actors": [{"surface": surface}],
            }, ensure_ascii=False))

    (OUT / "records.jsonl").write_text("\n".join(lines) + "\n",
                                       encoding="utf-8")
    print(f"wrote {record_id} records to {OUT}")


if __name__ == "__main__":
    main()
