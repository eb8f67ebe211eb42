//! Benchmark question set: the fixed 16-category task taxonomy (7 core
//! categories targeted at 10 questions each), a JSONL loader with duplicate
//! rejection, seven built-in seed questions, and coverage reporting.

use std::collections::BTreeMap;
use std::fmt;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Core categories should each reach this many questions for the benchmark
/// to count as complete.
pub const QUESTIONS_PER_CORE_CATEGORY: usize = 10;

/// The fixed task taxonomy. The first seven are the core research-report
/// categories; the rest are the extended set. Names are frozen — loaders
/// match them exactly.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(try_from = "String", into = "String")]
pub enum TaskCategory {
    StockSpecificAnalysis,
    EventAnalysis,
    StockSelectionFromGivenPlate,
    SectorAnalysis,
    InvestmentMorningBrief,
    PostMarketRecap,
    ExpertOpinion,
    StockSpecificPerformance,
    StockSpecificMovements,
    MarketPerformanceAndAnalysis,
    PlatePerformanceAndAnalysis,
    CriteriaBasedStockFiltering,
    TradeRecommendation,
    TrendingNews,
    InvestmentEducation,
    Others,
}

impl TaskCategory {
    pub const ALL: [TaskCategory; 16] = [
        TaskCategory::StockSpecificAnalysis,
        TaskCategory::EventAnalysis,
        TaskCategory::StockSelectionFromGivenPlate,
        TaskCategory::SectorAnalysis,
        TaskCategory::InvestmentMorningBrief,
        TaskCategory::PostMarketRecap,
        TaskCategory::ExpertOpinion,
        TaskCategory::StockSpecificPerformance,
        TaskCategory::StockSpecificMovements,
        TaskCategory::MarketPerformanceAndAnalysis,
        TaskCategory::PlatePerformanceAndAnalysis,
        TaskCategory::CriteriaBasedStockFiltering,
        TaskCategory::TradeRecommendation,
        TaskCategory::TrendingNews,
        TaskCategory::InvestmentEducation,
        TaskCategory::Others,
    ];

    /// The canonical category string.
    pub fn name(&self) -> &'static str {
        match self {
            TaskCategory::StockSpecificAnalysis => "Stock-Specific Analysis",
            TaskCategory::EventAnalysis => "Event Analysis",
            TaskCategory::StockSelectionFromGivenPlate => "Stock Selection from Given Plate",
            TaskCategory::SectorAnalysis => "Sector Analysis",
            TaskCategory::InvestmentMorningBrief => "Investment Morning Brief",
            TaskCategory::PostMarketRecap => "Post-Market Recap",
            TaskCategory::ExpertOpinion => "Expert Opinion",
            TaskCategory::StockSpecificPerformance => "Stock-Specific Performance",
            TaskCategory::StockSpecificMovements => "Stock-Specific Movements",
            TaskCategory::MarketPerformanceAndAnalysis => "Market Performance and Analysis",
            TaskCategory::PlatePerformanceAndAnalysis => "Plate Performance and Analysis",
            TaskCategory::CriteriaBasedStockFiltering => "Criteria-based Stock Filtering",
            TaskCategory::TradeRecommendation => "Trade Recommendation",
            TaskCategory::TrendingNews => "Trending News",
            TaskCategory::InvestmentEducation => "Investment Education",
            TaskCategory::Others => "Others",
        }
    }

    /// True for the seven core research-report categories.
    pub fn is_core(&self) -> bool {
        matches!(
            self,
            TaskCategory::StockSpecificAnalysis
                | TaskCategory::EventAnalysis
                | TaskCategory::StockSelectionFromGivenPlate
                | TaskCategory::SectorAnalysis
                | TaskCategory::InvestmentMorningBrief
                | TaskCategory::PostMarketRecap
                | TaskCategory::ExpertOpinion
        )
    }

    pub fn core_categories() -> impl Iterator<Item = TaskCategory> {
        TaskCategory::ALL.into_iter().filter(TaskCategory::is_core)
    }
}

impl fmt::Display for TaskCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Category string outside the fixed taxonomy.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown task category {0:?}")]
pub struct UnknownCategory(pub String);

impl FromStr for TaskCategory {
    type Err = UnknownCategory;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskCategory::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| UnknownCategory(s.to_string()))
    }
}

impl TryFrom<String> for TaskCategory {
    type Error = UnknownCategory;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<TaskCategory> for String {
    fn from(c: TaskCategory) -> Self {
        c.name().to_string()
    }
}

/// Where a question came from. Not part of the file format: the loader
/// stamps it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuestionSource {
    /// Shipped with the library.
    Builtin,
    /// Loaded from a user-provided question file.
    UserSupplied,
}

/// One benchmark question.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchQuestion {
    pub id: String,
    pub category: TaskCategory,
    pub prompt: String,
    #[serde(skip, default = "user_supplied")]
    pub source: QuestionSource,
}

fn user_supplied() -> QuestionSource {
    QuestionSource::UserSupplied
}

/// A question file the loader cannot accept.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("question file holds no records")]
    Empty,
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: empty prompt")]
    EmptyPrompt { line: usize },
    #[error("line {line}: duplicate prompt in category {category} (same as line {first_line})")]
    Duplicate {
        line: usize,
        first_line: usize,
        category: TaskCategory,
    },
}

/// Lowercased, whitespace-collapsed prompt used for duplicate detection.
fn normalize_prompt(prompt: &str) -> String {
    prompt
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Parses line-delimited JSON question records, rejecting unknown
/// categories, empty prompts, and duplicate (category, prompt) pairs.
/// Blank lines are skipped; at least one record must remain.
pub fn parse_questions(text: &str) -> Result<Vec<BenchQuestion>, LoadError> {
    let mut questions = Vec::new();
    let mut seen: BTreeMap<(TaskCategory, String), usize> = BTreeMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let question: BenchQuestion =
            serde_json::from_str(line).map_err(|err| LoadError::Malformed {
                line: line_no,
                message: err.to_string(),
            })?;
        if question.prompt.trim().is_empty() {
            return Err(LoadError::EmptyPrompt { line: line_no });
        }
        let dedup_key = (question.category, normalize_prompt(&question.prompt));
        if let Some(&first_line) = seen.get(&dedup_key) {
            return Err(LoadError::Duplicate {
                line: line_no,
                first_line,
                category: question.category,
            });
        }
        seen.insert(dedup_key, line_no);
        questions.push(question);
    }
    if questions.is_empty() {
        return Err(LoadError::Empty);
    }
    Ok(questions)
}

/// Loads a question file from disk; records are stamped as user-supplied.
pub fn load_questions(path: &Path) -> Result<Vec<BenchQuestion>, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_questions(&text)
}

/// Renders questions back to the line-delimited format `parse_questions`
/// reads, one record per line.
pub fn serialize_questions(questions: &[BenchQuestion]) -> String {
    let mut out = String::new();
    for question in questions {
        out.push_str(&serde_json::to_string(question).expect("question always serializes"));
        out.push('\n');
    }
    out
}

/// The seven seed questions shipped with the library, one per core category.
pub fn builtin_questions() -> Vec<BenchQuestion> {
    let mut questions = parse_questions(include_str!("../data/seed_questions.jsonl"))
        .expect("embedded seed questions are well-formed");
    for question in &mut questions {
        question.source = QuestionSource::Builtin;
    }
    questions
}

/// Per-category counts against the 10-per-core-category target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    /// Counts for every category in the taxonomy, zero-filled.
    pub counts: BTreeMap<TaskCategory, usize>,
    /// True when every core category has at least
    /// [`QUESTIONS_PER_CORE_CATEGORY`] questions.
    pub complete: bool,
}

pub fn coverage_report(questions: &[BenchQuestion]) -> CoverageReport {
    let mut counts: BTreeMap<TaskCategory, usize> =
        TaskCategory::ALL.into_iter().map(|c| (c, 0)).collect();
    for question in questions {
        *counts.get_mut(&question.category).expect("all categories present") += 1;
    }
    let complete = TaskCategory::core_categories()
        .all(|c| counts[&c] >= QUESTIONS_PER_CORE_CATEGORY);
    CoverageReport { counts, complete }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taxonomy_has_sixteen_categories_seven_core() {
        assert_eq!(TaskCategory::ALL.len(), 16);
        assert_eq!(TaskCategory::core_categories().count(), 7);
    }

    #[test]
    fn category_names_round_trip() {
        for category in TaskCategory::ALL {
            assert_eq!(category.name().parse::<TaskCategory>().unwrap(), category);
        }
        assert!("Stock Tips".parse::<TaskCategory>().is_err());
    }

    #[test]
    fn builtin_seed_covers_each_core_category_once() {
        let questions = builtin_questions();
        assert_eq!(questions.len(), 7);
        let report = coverage_report(&questions);
        for category in TaskCategory::core_categories() {
            assert_eq!(report.counts[&category], 1, "{category}");
        }
        assert!(!report.complete);
        assert!(questions
            .iter()
            .all(|q| q.source == QuestionSource::Builtin));
    }

    #[test]
    fn extended_category_loads_as_non_core() {
        let line = r#"{"id": "x1", "category": "Trade Recommendation", "prompt": "Should one rotate into utilities this quarter?"}"#;
        let questions = parse_questions(line).unwrap();
        assert_eq!(questions[0].category, TaskCategory::TradeRecommendation);
        assert!(!questions[0].category.is_core());
        assert_eq!(questions[0].source, QuestionSource::UserSupplied);
    }

    #[test]
    fn unknown_category_names_the_line() {
        let text = "\n{\"id\": \"a\", \"category\": \"Horoscopes\", \"prompt\": \"p\"}";
        let err = parse_questions(text).unwrap_err();
        match err {
            LoadError::Malformed { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("unknown task category"), "{message}");
            }
            other => panic!("expected Malformed, got {other:?}"),
        }
    }

    #[test]
    fn duplicates_are_rejected_up_to_whitespace_and_case() {
        let text = concat!(
            r#"{"id": "a", "category": "Event Analysis", "prompt": "What moved gold today?"}"#,
            "\n",
            r#"{"id": "b", "category": "Event Analysis", "prompt": "  what   moved GOLD today? "}"#,
        );
        let err = parse_questions(text).unwrap_err();
        assert!(matches!(
            err,
            LoadError::Duplicate {
                line: 2,
                first_line: 1,
                category: TaskCategory::EventAnalysis
            }
        ));
        // Same prompt in a different category is allowed.
        let ok = concat!(
            r#"{"id": "a", "category": "Event Analysis", "prompt": "What moved gold today?"}"#,
            "\n",
            r#"{"id": "b", "category": "Trending News", "prompt": "What moved gold today?"}"#,
        );
        assert_eq!(parse_questions(ok).unwrap().len(), 2);
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(matches!(parse_questions(""), Err(LoadError::Empty)));
        assert!(matches!(parse_questions("\n  \n"), Err(LoadError::Empty)));
        let empty_prompt = r#"{"id": "a", "category": "Others", "prompt": "  "}"#;
        assert!(matches!(
            parse_questions(empty_prompt),
            Err(LoadError::EmptyPrompt { line: 1 })
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let questions = builtin_questions();
        let text = serialize_questions(&questions);
        let reloaded = parse_questions(&text).unwrap();
        assert_eq!(reloaded.len(), questions.len());
        for (orig, loaded) in questions.iter().zip(&reloaded) {
            assert_eq!(orig.id, loaded.id);
            assert_eq!(orig.category, loaded.category);
            assert_eq!(orig.prompt, loaded.prompt);
        }
    }

    #[test]
    fn seventy_questions_ten_per_core_category_is_complete() {
        let mut questions = Vec::new();
        for category in TaskCategory::core_categories() {
            for i in 0..10 {
                questions.push(BenchQuestion {
                    id: format!("{}-{i}", category.name()),
                    category,
                    prompt: format!("{} question number {i}", category.name()),
                    source: QuestionSource::UserSupplied,
                });
            }
        }
        assert_eq!(questions.len(), 70);
        let report = coverage_report(&questions);
        assert!(report.complete);
    }

    #[test]
    fn zero_questions_report_all_zero_counts() {
        let report = coverage_report(&[]);
        assert!(report.counts.values().all(|&c| c == 0));
        assert_eq!(report.counts.len(), 16);
        assert!(!report.complete);
    }
}
