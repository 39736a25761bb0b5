use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// The statements a campaign can check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    /// One positive eigenvalue of the Hessian of `Z_M`.
    #[serde(rename = "qHR")]
    QHr,
    /// Nonsingular Hessian with one positive eigenvalue for `d^alpha Z_{M,c}`.
    #[serde(rename = "cqHR")]
    CqHr,
    /// The degree-two quadratic form inequalities.
    #[serde(rename = "deg2")]
    DegreeTwo,
    #[serde(rename = "ulc")]
    Ulc,
    #[serde(rename = "mason")]
    Mason,
    #[serde(rename = "simplification")]
    Simplification,
    #[serde(rename = "logconcavity")]
    LogConcavity,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::QHr,
        Theorem::CqHr,
        Theorem::DegreeTwo,
        Theorem::Ulc,
        Theorem::Mason,
        Theorem::Simplification,
        Theorem::LogConcavity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::QHr => "qHR",
            Theorem::CqHr => "cqHR",
            Theorem::DegreeTwo => "deg2",
            Theorem::Ulc => "ulc",
            Theorem::Mason => "mason",
            Theorem::Simplification => "simplification",
            Theorem::LogConcavity => "logconcavity",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown theorem {s:?}")))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Passed because the inequality had nothing to compare.
    Vacuous,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Vacuous => "vacuous",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// One evaluated check. `inputs` holds everything needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub theorem: Theorem,
    pub matroid: String,
    pub inputs: Value,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub not_applicable: usize,
}

impl Counts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Pass => self.pass += 1,
            Verdict::Fail => self.fail += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.vacuous + self.not_applicable
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: Counts,
    pub by_theorem: BTreeMap<String, Counts>,
    pub equality_cases: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// Wall-clock time; kept out of the JSON so reports are byte-stable.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

impl VerificationReport {
    pub fn new(campaign: impl Into<String>) -> Self {
        VerificationReport {
            campaign: campaign.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// Recomputes the summary from the checks.
    pub fn finish(mut self) -> Self {
        let mut summary = Summary::default();
        for c in &self.checks {
            summary.total.add(c.verdict);
            summary
                .by_theorem
                .entry(c.theorem.name().to_string())
                .or_default()
                .add(c.verdict);
            if c.annotations.iter().any(|a| a.starts_with("equality")) {
                summary.equality_cases += 1;
            }
        }
        self.summary = summary;
        self
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        self.checks.iter().map(|c| c.verdict).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    /// Human-readable summary, one line per theorem.
    pub fn summary_text(&self) -> String {
        let mut out = format!("campaign {}: {} checks", self.campaign, self.summary.total.total());
        if let Some(t) = self.elapsed {
            out.push_str(&format!(" in {:.2}s", t.as_secs_f64()));
        }
        out.push('\n');
        for (name, c) in &self.summary.by_theorem {
            out.push_str(&format!(
                "  {name:<15} pass {:>6}  fail {:>4}  vacuous {:>5}  n/a {:>5}\n",
                c.pass, c.fail, c.vacuous, c.not_applicable
            ));
        }
        if self.summary.equality_cases > 0 {
            out.push_str(&format!("  equality cases annotated: {}\n", self.summary.equality_cases));
        }
        for f in self.failures().take(5) {
            out.push_str(&format!("  FAIL {} on {}: {}\n", f.theorem, f.matroid, f.witness));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.name()).unwrap(), t);
            let s = serde_json::to_string(&t).unwrap();
            assert_eq!(s, format!("\"{}\"", t.name()));
        }
        assert_eq!(
            serde_json::to_string(&Verdict::NotApplicable).unwrap(),
            "\"not-applicable\""
        );
        assert!(Theorem::parse("nope").is_err());
    }

    #[test]
    fn summary_and_json() {
        let mut r = VerificationReport::new("t");
        r.push(Check {
            theorem: Theorem::Mason,
            matroid: "K3".into(),
            inputs: json!({}),
            verdict: Verdict::Pass,
            witness: Value::Null,
            annotations: vec!["equality at k=1".into()],
        });
        r.elapsed = Some(Duration::from_millis(5));
        let r = r.finish();
        assert_eq!(r.summary.total.pass, 1);
        assert_eq!(r.summary.equality_cases, 1);
        let back = VerificationReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back.checks, r.checks);
        assert!(back.elapsed.is_none());
        assert!(!r.to_json().contains("elapsed"));
    }
}
