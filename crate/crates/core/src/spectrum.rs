//! Author-centric and external-agent reproducibility labels derived from
//! artifact badge sets.
//!
//! The author-centric ordering is A_PWA < A_PUNX < A_PAX (increasing
//! artifact provision effort); the external-agent ordering is
//! E_NR < E_AR < E_Re < E_R (increasing evidence of reproduction).

use crate::corpus::BadgeSet;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Author-centric label: how much artifact effort the authors supplied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AuthorLabel {
    /// Papers without artifacts.
    #[serde(rename = "A_PWA")]
    Pwa,
    /// Papers with unvalidated (available or functional) artifacts.
    #[serde(rename = "A_PUNX")]
    Punx,
    /// Papers with validated, reusable artifacts.
    #[serde(rename = "A_PAX")]
    Pax,
}

/// External-agent label: what an independent party could establish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExternalLabel {
    /// Not reproducible: no artifacts to work from.
    #[serde(rename = "E_NR")]
    Nr,
    /// Artifacts exist but results have not been reproduced.
    #[serde(rename = "E_AR")]
    Ar,
    /// Results reproduced without permanently archived reusable artifacts.
    #[serde(rename = "E_Re")]
    Re,
    /// Reproduced and reusable.
    #[serde(rename = "E_R")]
    R,
}

/// A paper's position on both spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectrumLabel {
    pub author: AuthorLabel,
    pub external: ExternalLabel,
}

/// Which framework a grouping or report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Framework {
    Author,
    External,
}

impl AuthorLabel {
    pub const ALL: [AuthorLabel; 3] = [AuthorLabel::Pwa, AuthorLabel::Punx, AuthorLabel::Pax];

    pub fn as_str(self) -> &'static str {
        match self {
            AuthorLabel::Pwa => "A_PWA",
            AuthorLabel::Punx => "A_PUNX",
            AuthorLabel::Pax => "A_PAX",
        }
    }
}

impl ExternalLabel {
    pub const ALL: [ExternalLabel; 4] = [
        ExternalLabel::Nr,
        ExternalLabel::Ar,
        ExternalLabel::Re,
        ExternalLabel::R,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExternalLabel::Nr => "E_NR",
            ExternalLabel::Ar => "E_AR",
            ExternalLabel::Re => "E_Re",
            ExternalLabel::R => "E_R",
        }
    }
}

impl Framework {
    pub fn as_str(self) -> &'static str {
        match self {
            Framework::Author => "author",
            Framework::External => "external",
        }
    }

    /// Canonical label-name order for this framework's groups.
    pub fn label_names(self) -> &'static [&'static str] {
        match self {
            Framework::Author => &["A_PWA", "A_PUNX", "A_PAX"],
            Framework::External => &["E_NR", "E_AR", "E_Re", "E_R"],
        }
    }
}

impl SpectrumLabel {
    /// The label name on the requested framework's axis.
    pub fn name_for(&self, framework: Framework) -> &'static str {
        match framework {
            Framework::Author => self.author.as_str(),
            Framework::External => self.external.as_str(),
        }
    }
}

impl fmt::Display for AuthorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for ExternalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Framework {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "author" => Ok(Framework::Author),
            "external" => Ok(Framework::External),
            other => Err(crate::Error::invalid(format!(
                "unknown framework {other:?}; expected \"author\" or \"external\""
            ))),
        }
    }
}

/// Author-centric rule: Reusable dominates, then Available/Functional.
/// A paper holding only the Results Reproduced badge supplied no
/// artifacts, so it stays A_PWA.
pub fn author_label(badges: &BadgeSet) -> AuthorLabel {
    if badges.reusable {
        AuthorLabel::Pax
    } else if badges.available || badges.functional {
        AuthorLabel::Punx
    } else {
        AuthorLabel::Pwa
    }
}

/// External-agent rule: reproduction evidence dominates, refined by
/// whether the reproduced artifacts are also reusable.
pub fn external_label(badges: &BadgeSet) -> ExternalLabel {
    if badges.reproduced && badges.reusable {
        ExternalLabel::R
    } else if badges.reproduced {
        ExternalLabel::Re
    } else if badges.available || badges.functional || badges.reusable {
        ExternalLabel::Ar
    } else {
        ExternalLabel::Nr
    }
}

/// Both labels at once.
pub fn joint_label(badges: &BadgeSet) -> SpectrumLabel {
    SpectrumLabel {
        author: author_label(badges),
        external: external_label(badges),
    }
}
