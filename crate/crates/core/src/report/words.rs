//! Word counting for mixed CJK/Latin text.
//!
//! Each CJK character counts as one word; maximal runs of non-CJK,
//! non-whitespace characters count as one word each. Pure whitespace
//! tokenization would undercount Chinese text by roughly an order of
//! magnitude, which matters because the richness breakpoints are calibrated
//! against word counts.

/// Counts words under the mixed-script rule.
pub fn count_words(text: &str) -> usize {
    let mut count = 0usize;
    let mut in_run = false;
    for ch in text.chars() {
        if is_cjk_char(ch) {
            count += 1;
            in_run = false;
        } else if ch.is_whitespace() {
            in_run = false;
        } else if !in_run {
            count += 1;
            in_run = true;
        }
    }
    count
}

/// CJK ideographs plus kana and hangul. Fullwidth punctuation is excluded;
/// it behaves like any other non-whitespace character.
pub fn is_cjk_char(ch: char) -> bool {
    matches!(
        ch as u32,
        // CJK unified ideographs and extensions
        0x3400..=0x4DBF
            | 0x4E00..=0x9FFF
            | 0xF900..=0xFAFF
            | 0x20000..=0x2A6DF
            | 0x2A700..=0x2B73F
            | 0x2B740..=0x2B81F
            | 0x2B820..=0x2CEAF
            | 0x2F800..=0x2FA1F
            // Hiragana / Katakana
            | 0x3040..=0x309F
            | 0x30A0..=0x30FF
            // Hangul
            | 0x1100..=0x11FF
            | 0x3130..=0x318F
            | 0xAC00..=0xD7AF
    )
}
