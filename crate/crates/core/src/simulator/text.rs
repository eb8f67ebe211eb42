//! Canned pseudo-finance vocabulary for the synthetic generator. Everything
//! here is ASCII prose with no markdown metacharacters, so a paragraph of n
//! picks always counts as exactly n words.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

const THEMES: [&str; 12] = [
    "Semiconductor supply chains",
    "Consumer electronics demand",
    "Renewable energy policy",
    "Regional banking liquidity",
    "Electric vehicle adoption",
    "Cloud infrastructure spending",
    "Luxury goods pricing power",
    "Industrial automation cycle",
    "Pharmaceutical pipeline risk",
    "Commodity freight rates",
    "Payment network economics",
    "Data center power constraints",
];

const ASPECTS: [&str; 10] = [
    "Valuation drivers",
    "Policy tailwinds",
    "Competitive landscape",
    "Margin trajectory",
    "Capital allocation",
    "Demand signals",
    "Supply constraints",
    "Regulatory exposure",
    "Earnings quality",
    "Macro sensitivity",
];

const WORD_BANK: [&str; 32] = [
    "revenue", "guidance", "margins", "quarterly", "filings", "show", "segment", "growth",
    "slowing", "against", "consensus", "estimates", "while", "inventory", "levels", "normalize",
    "across", "channels", "management", "reiterated", "capital", "discipline", "and", "flagged",
    "currency", "headwinds", "pricing", "remains", "firm", "despite", "promotional", "pressure",
];

/// A root topic label, drawn from the theme pool.
pub(super) fn pick_theme(rng: &mut ChaCha8Rng) -> String {
    THEMES[rng.gen_range(0..THEMES.len())].to_string()
}

/// A sub-topic label. The path suffix keeps sibling labels distinct even
/// when the same aspect is drawn twice.
pub(super) fn pick_aspect(rng: &mut ChaCha8Rng, path: &str) -> String {
    let aspect = ASPECTS[rng.gen_range(0..ASPECTS.len())];
    format!("{aspect} ({path})")
}

/// A paragraph of exactly `words` words: bank picks joined by single
/// spaces, sentence-cased, closed with a period.
pub(super) fn synth_paragraph(rng: &mut ChaCha8Rng, words: usize) -> String {
    let mut picks = Vec::with_capacity(words);
    for _ in 0..words {
        picks.push(WORD_BANK[rng.gen_range(0..WORD_BANK.len())]);
    }
    let mut paragraph = picks.join(" ");
    if let Some(first) = paragraph.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    paragraph.push('.');
    paragraph
}
