//! Markdown report parsing: section hierarchy and per-section word counts.
//!
//! Any UTF-8 text parses. ATX headings `#`..`######` define the nesting;
//! text before the first heading lands in an implicit preamble section at
//! level 0. Image references and table scaffolding are kept in `raw_text`
//! but contribute nothing to word counts beyond alt text and cell text.

mod words;

pub use words::{count_words, is_cjk_char};

use serde::{Deserialize, Serialize};

/// A parsed markdown report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    /// Text of the first level-1 heading, when one exists.
    pub title: Option<String>,
    /// Top-level sections in document order (a level-0 preamble first, when
    /// the document opens with body text).
    pub sections: Vec<Section>,
    /// The original input, byte for byte.
    pub raw_text: String,
}

impl ReportDocument {
    pub fn is_blank(&self) -> bool {
        self.raw_text.trim().is_empty()
    }

    /// All sections at heading level >= 1, depth first.
    pub fn subtitled_sections(&self) -> Vec<&Section> {
        let mut out = Vec::new();
        for section in &self.sections {
            collect_subtitled(section, &mut out);
        }
        out
    }
}

fn collect_subtitled<'a>(section: &'a Section, out: &mut Vec<&'a Section>) {
    if section.level >= 1 {
        out.push(section);
    }
    for sub in &section.subsections {
        collect_subtitled(sub, out);
    }
}

/// One heading-delimited section. `body_word_count` covers only text directly
/// under this heading, not subsection text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub heading: String,
    /// Heading level; 0 is reserved for the implicit preamble.
    pub level: usize,
    pub body_word_count: usize,
    /// Body text directly under this heading, markup intact.
    pub body_text: String,
    pub subsections: Vec<Section>,
}

impl Section {
    /// Body paragraphs: blank-line separated chunks of the body text.
    pub fn body_paragraphs(&self) -> Vec<String> {
        self.body_text
            .split("\n\n")
            .map(|p| p.trim())
            .filter(|p| !p.is_empty())
            .map(|p| p.to_string())
            .collect()
    }
}

/// Mean body word count per subtitle, the input to the richness metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RichnessInput {
    pub w: f64,
}

/// Parses markdown into the section hierarchy. Never fails: empty input
/// yields an empty document, heading-free text yields a lone preamble.
pub fn parse_report(text: &str) -> ReportDocument {
    let mut parser = Parser::default();
    for line in text.lines() {
        parser.push_line(line);
    }
    let (sections, title) = parser.finish();
    ReportDocument {
        title,
        sections,
        raw_text: text.to_string(),
    }
}

/// w = mean of `body_word_count` over every section at level >= 1, including
/// empty-bodied ones; 0 when the document has no subtitled sections. The
/// preamble has no subtitle and is excluded.
pub fn average_words_per_subtitle(doc: &ReportDocument) -> RichnessInput {
    let sections = doc.subtitled_sections();
    if sections.is_empty() {
        return RichnessInput { w: 0.0 };
    }
    let total: usize = sections.iter().map(|s| s.body_word_count).sum();
    RichnessInput {
        w: total as f64 / sections.len() as f64,
    }
}

// ─── Parsing internals ───────────────────────────────────────────────────────

#[derive(Default)]
struct Parser {
    /// Finished top-level sections.
    top: Vec<Section>,
    /// Open sections, outermost first.
    stack: Vec<Section>,
    preamble_lines: Vec<String>,
    body_lines: Vec<String>,
    title: Option<String>,
    in_fence: bool,
    fence_marker: char,
}

impl Parser {
    fn push_line(&mut self, line: &str) {
        if let Some(marker) = fence_delimiter(line) {
            if self.in_fence {
                if marker == self.fence_marker {
                    self.in_fence = false;
                }
            } else {
                self.in_fence = true;
                self.fence_marker = marker;
            }
            self.push_body(line);
            return;
        }
        if self.in_fence {
            self.push_body(line);
            return;
        }
        match parse_heading(line) {
            Some((level, heading)) => self.open_section(level, heading),
            None => self.push_body(line),
        }
    }

    fn push_body(&mut self, line: &str) {
        if self.stack.is_empty() {
            self.preamble_lines.push(line.to_string());
        } else {
            self.body_lines.push(line.to_string());
        }
    }

    fn open_section(&mut self, level: usize, heading: String) {
        self.flush_body();
        while self
            .stack
            .last()
            .map(|s| s.level >= level)
            .unwrap_or(false)
        {
            self.close_one();
        }
        if level == 1 && self.title.is_none() {
            self.title = Some(heading.clone());
        }
        self.stack.push(Section {
            heading,
            level,
            body_word_count: 0,
            body_text: String::new(),
            subsections: Vec::new(),
        });
    }

    fn flush_body(&mut self) {
        if self.body_lines.is_empty() {
            return;
        }
        let body = std::mem::take(&mut self.body_lines).join("\n");
        if let Some(open) = self.stack.last_mut() {
            open.body_text = body;
        }
    }

    fn close_one(&mut self) {
        let section = self.stack.pop().expect("close_one on non-empty stack");
        match self.stack.last_mut() {
            Some(parent) => parent.subsections.push(section),
            None => self.top.push(section),
        }
    }

    fn finish(mut self) -> (Vec<Section>, Option<String>) {
        self.flush_body();
        while !self.stack.is_empty() {
            self.close_one();
        }
        let mut sections = Vec::new();
        let preamble = self.preamble_lines.join("\n");
        if !preamble.trim().is_empty() {
            sections.push(finalize(Section {
                heading: String::new(),
                level: 0,
                body_word_count: 0,
                body_text: preamble,
                subsections: Vec::new(),
            }));
        }
        sections.extend(self.top.into_iter().map(finalize));
        (sections, self.title)
    }
}

fn finalize(mut section: Section) -> Section {
    section.body_text = section.body_text.trim_end().to_string();
    section.body_word_count = count_words(&strip_markup(&section.body_text));
    section.subsections = section.subsections.into_iter().map(finalize).collect();
    section
}

fn fence_delimiter(line: &str) -> Option<char> {
    let trimmed = line.trim_start();
    for marker in ['`', '~'] {
        if trimmed.chars().take_while(|c| *c == marker).count() >= 3 {
            return Some(marker);
        }
    }
    None
}

fn parse_heading(line: &str) -> Option<(usize, String)> {
    if !line.starts_with('#') {
        return None;
    }
    let level = line.chars().take_while(|c| *c == '#').count();
    if level > 6 {
        return None;
    }
    let rest = &line[level..];
    if !rest.is_empty() && !rest.starts_with(' ') && !rest.starts_with('\t') {
        return None;
    }
    // Strip an optional closing hash run, as in `## title ##`.
    let text = rest.trim().trim_end_matches('#').trim_end();
    Some((level, text.to_string()))
}

/// Drops markup that should not count as words: image and link URLs and
/// table scaffolding. Alt text, link text and cell text stay.
fn strip_markup(body: &str) -> String {
    let mut out = String::with_capacity(body.len());
    for line in body.lines() {
        if is_table_separator(line) {
            continue;
        }
        let line = strip_inline_refs(line);
        out.push_str(&line.replace('|', " "));
        out.push('\n');
    }
    out
}

fn is_table_separator(line: &str) -> bool {
    let trimmed = line.trim();
    !trimmed.is_empty()
        && trimmed.contains('-')
        && trimmed
            .chars()
            .all(|c| matches!(c, '|' | '-' | ':' | ' ' | '\t'))
}

/// Rewrites `![alt](url)` to `alt` and `[text](url)` to `text`.
fn strip_inline_refs(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let start = if bytes[i] == b'!' && bytes.get(i + 1) == Some(&b'[') {
            i + 1
        } else if bytes[i] == b'[' {
            i
        } else {
            out.push(line[i..].chars().next().expect("in-bounds char"));
            i += line[i..].chars().next().map(char::len_utf8).unwrap_or(1);
            continue;
        };
        // Candidate reference: find `](` then the closing `)`.
        match find_ref_end(line, start) {
            Some((text, end)) => {
                out.push_str(text);
                i = end;
            }
            None => {
                out.push(line[i..].chars().next().expect("in-bounds char"));
                i += line[i..].chars().next().map(char::len_utf8).unwrap_or(1);
            }
        }
    }
    out
}

fn find_ref_end(line: &str, open_bracket: usize) -> Option<(&str, usize)> {
    let close_bracket = line[open_bracket..].find("](").map(|p| p + open_bracket)?;
    let close_paren = line[close_bracket..].find(')').map(|p| p + close_bracket)?;
    Some((&line[open_bracket + 1..close_bracket], close_paren + 1))
}
