//! The ten scoring dimensions. Four are rule-derived (computed from tree and
//! text statistics), six are rubric-judged. Declaration order is the
//! canonical presentation order used by leaderboards and reports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the ten scored dimensions.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    VisualLinguisticSynergy,
    ArticulationProfessionalism,
    ArticulationCoherence,
    AnalysisFrameworkQuality,
    AnalysisWidth,
    AnalysisDepth,
    InformationDensity,
    LogicConsistency,
    ViewpointClarity,
    ParagraphRichness,
}

impl Dimension {
    /// Every dimension, in presentation order.
    pub const ALL: [Dimension; 10] = [
        Dimension::VisualLinguisticSynergy,
        Dimension::ArticulationProfessionalism,
        Dimension::ArticulationCoherence,
        Dimension::AnalysisFrameworkQuality,
        Dimension::AnalysisWidth,
        Dimension::AnalysisDepth,
        Dimension::InformationDensity,
        Dimension::LogicConsistency,
        Dimension::ViewpointClarity,
        Dimension::ParagraphRichness,
    ];

    /// Human-facing column header.
    pub fn display_name(&self) -> &'static str {
        match self {
            Dimension::VisualLinguisticSynergy => "Visual-Linguistic Synergy",
            Dimension::ArticulationProfessionalism => "Articulation Professionalism",
            Dimension::ArticulationCoherence => "Articulation Coherence",
            Dimension::AnalysisFrameworkQuality => "Analysis Framework Quality",
            Dimension::AnalysisWidth => "Analysis Width",
            Dimension::AnalysisDepth => "Analysis Depth",
            Dimension::InformationDensity => "Information Density",
            Dimension::LogicConsistency => "Logic Consistency",
            Dimension::ViewpointClarity => "Viewpoint Clarity",
            Dimension::ParagraphRichness => "Paragraph Richness",
        }
    }

    /// Stable machine identifier, used in JSON/CSV and on the command line.
    pub fn key(&self) -> &'static str {
        match self {
            Dimension::VisualLinguisticSynergy => "visual_linguistic_synergy",
            Dimension::ArticulationProfessionalism => "articulation_professionalism",
            Dimension::ArticulationCoherence => "articulation_coherence",
            Dimension::AnalysisFrameworkQuality => "analysis_framework_quality",
            Dimension::AnalysisWidth => "analysis_width",
            Dimension::AnalysisDepth => "analysis_depth",
            Dimension::InformationDensity => "information_density",
            Dimension::LogicConsistency => "logic_consistency",
            Dimension::ViewpointClarity => "viewpoint_clarity",
            Dimension::ParagraphRichness => "paragraph_richness",
        }
    }

    /// True for dimensions computed by rule from tree/text statistics,
    /// false for the judge-scored rubric dimensions.
    pub fn is_rule_derived(&self) -> bool {
        matches!(
            self,
            Dimension::AnalysisWidth
                | Dimension::AnalysisDepth
                | Dimension::InformationDensity
                | Dimension::ParagraphRichness
        )
    }

    /// The rubric counterpart for judge-scored dimensions.
    pub fn rubric(&self) -> Option<RubricDimension> {
        match self {
            Dimension::VisualLinguisticSynergy => Some(RubricDimension::VisualLinguisticSynergy),
            Dimension::ArticulationProfessionalism => {
                Some(RubricDimension::ArticulationProfessionalism)
            }
            Dimension::ArticulationCoherence => Some(RubricDimension::ArticulationCoherence),
            Dimension::AnalysisFrameworkQuality => Some(RubricDimension::AnalysisFrameworkQuality),
            Dimension::LogicConsistency => Some(RubricDimension::LogicConsistency),
            Dimension::ViewpointClarity => Some(RubricDimension::ViewpointClarity),
            _ => None,
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for Dimension {
    type Err = UnknownDimension;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dimension::ALL
            .into_iter()
            .find(|d| d.key() == s)
            .ok_or_else(|| UnknownDimension(s.to_string()))
    }
}

/// Error for a dimension name no variant matches.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown dimension {0:?}")]
pub struct UnknownDimension(pub String);

/// The six judge-scored dimensions, the ones a rubric prompt exists for.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum RubricDimension {
    VisualLinguisticSynergy,
    ArticulationProfessionalism,
    ArticulationCoherence,
    AnalysisFrameworkQuality,
    LogicConsistency,
    ViewpointClarity,
}

impl RubricDimension {
    pub const ALL: [RubricDimension; 6] = [
        RubricDimension::VisualLinguisticSynergy,
        RubricDimension::ArticulationProfessionalism,
        RubricDimension::ArticulationCoherence,
        RubricDimension::AnalysisFrameworkQuality,
        RubricDimension::LogicConsistency,
        RubricDimension::ViewpointClarity,
    ];

    /// The corresponding entry of the full ten-dimension taxonomy.
    pub fn dimension(&self) -> Dimension {
        match self {
            RubricDimension::VisualLinguisticSynergy => Dimension::VisualLinguisticSynergy,
            RubricDimension::ArticulationProfessionalism => {
                Dimension::ArticulationProfessionalism
            }
            RubricDimension::ArticulationCoherence => Dimension::ArticulationCoherence,
            RubricDimension::AnalysisFrameworkQuality => Dimension::AnalysisFrameworkQuality,
            RubricDimension::LogicConsistency => Dimension::LogicConsistency,
            RubricDimension::ViewpointClarity => Dimension::ViewpointClarity,
        }
    }

    pub fn key(&self) -> &'static str {
        self.dimension().key()
    }

    pub fn display_name(&self) -> &'static str {
        self.dimension().display_name()
    }
}

impl fmt::Display for RubricDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ten_dimensions_split_six_rubric_four_rule() {
        let rule: Vec<_> = Dimension::ALL
            .iter()
            .filter(|d| d.is_rule_derived())
            .collect();
        assert_eq!(rule.len(), 4);
        assert_eq!(Dimension::ALL.len() - rule.len(), 6);
    }

    #[test]
    fn rubric_mapping_is_consistent_both_ways() {
        for rubric in RubricDimension::ALL {
            assert_eq!(rubric.dimension().rubric(), Some(rubric));
            assert!(!rubric.dimension().is_rule_derived());
        }
        for dim in Dimension::ALL {
            assert_eq!(dim.rubric().is_none(), dim.is_rule_derived());
        }
    }

    #[test]
    fn keys_are_unique_and_parse_back() {
        let keys: BTreeSet<_> = Dimension::ALL.iter().map(|d| d.key()).collect();
        assert_eq!(keys.len(), 10);
        for dim in Dimension::ALL {
            assert_eq!(dim.key().parse::<Dimension>().unwrap(), dim);
        }
        assert!("final_score".parse::<Dimension>().is_err());
    }

    #[test]
    fn serde_uses_the_key_form() {
        let json = serde_json::to_string(&Dimension::AnalysisWidth).unwrap();
        assert_eq!(json, "\"analysis_width\"");
        let back: Dimension = serde_json::from_str("\"paragraph_richness\"").unwrap();
        assert_eq!(back, Dimension::ParagraphRichness);
    }
}
