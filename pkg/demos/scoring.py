"""Walkthrough: multi-reference corpus BLEU and TER scoring.

Run:  python demos/scoring.py
"""

from kgtext.metrics import MetricConfig, SegmentPair, score_report

# Hypotheses with their reference sets (any number of references each).
pairs = [
    SegmentPair(
        "The Aarhus is the airport of Aarhus, Denmark.",
        ("The Aarhus is the airport of Aarhus, Denmark.",
         "Aarhus Airport serves the city of Aarhus, Denmark."),
    ),
    SegmentPair(
        "Asser Levy Public Baths are found in New York City, in the United States.",
        ("The Asser Levy Public Baths are located in New York City, United States.",),
    ),
    SegmentPair(
        "Manhattan's leader is Cyrus Vance Jr.",
        ("The leader of Manhattan is Cyrus Vance Jr.",
         "Cyrus Vance Jr. leads Manhattan."),
    ),
]

config = MetricConfig()  # international tokenization, case-sensitive, no smoothing
report = score_report(pairs, config, external_values={"METEOR": 42.24},
                      include_segments=True)

print("corpus BLEU :", f"{report.bleu.score:.2f}")
print("  precisions:", [f"{p:.1f}" for p in report.bleu.precisions])
print("  brevity   :", f"{report.bleu.brevity_penalty:.4f}")
print("corpus TER  :", f"{report.ter.score:.4f}",
      f"({report.ter.total_edits} edits / {report.ter.ref_len} reference words)")

print("\nper-segment diagnostics (epsilon-smoothed sentence BLEU):")
for pair, segment in zip(pairs, report.segments):
    print(f"  bleu={segment.bleu:6.2f} ter={segment.ter:.4f}  {pair.hypothesis[:55]}")

# The flat report format written by `kgtext score`:
print("\n" + report.to_text())
