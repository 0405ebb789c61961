use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

/// Everything a run depends on. Flags and `run <job.json>` both produce one.
#[derive(Args, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobSpec {
    #[arg(skip)]
    pub command: String,

    /// Series letter (`A`…`G`) or a full type such as `B3` or `A1xA2`.
    #[arg(long = "type", value_name = "SERIES")]
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub series: Option<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,

    /// Full type, alternative to `--type/--rank`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,

    /// Diagram automorphism: `id`, `flip`, `triality` or an image list like `3,2,1`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<String>,

    #[arg(long = "J", value_name = "SUBSET")]
    #[serde(rename = "J", skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,

    #[arg(long = "K", value_name = "SUBSET")]
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,

    #[arg(long = "K2", value_name = "SUBSET")]
    #[serde(rename = "K2", skip_serializing_if = "Option::is_none")]
    pub k2: Option<String>,

    #[arg(long = "H", value_name = "SUBSET")]
    #[serde(rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,

    /// Element as a word, e.g. `"s2 s1"`.
    #[arg(long, value_name = "WORD")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,

    #[arg(long, value_name = "WORD")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,

    #[arg(long = "n")]
    #[serde(rename = "n", skip_serializing_if = "Option::is_none")]
    pub sp_n: Option<usize>,

    #[arg(long = "k")]
    #[serde(rename = "k", skip_serializing_if = "Option::is_none")]
    pub sp_k: Option<usize>,

    /// Hecke parameters `c_s = v^{2m_s}` given as `m_1,…,m_r`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<String>,

    /// `root` or `reflection`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level: Option<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,

    /// Comma-separated list of types.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<String>,

    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,

    /// Write the JSON report here.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,

    #[arg(short, long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub verbose: bool,

    /// Run sweeps on one thread.
    #[arg(long)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub sequential: bool,
}

impl JobSpec {
    /// The type string, from `--group` or `--type` plus `--rank`.
    pub fn type_name(&self) -> Option<String> {
        if let Some(g) = &self.group {
            return Some(g.clone());
        }
        let s = self.series.as_ref()?;
        Some(match self.rank {
            Some(r) => format!("{s}{r}"),
            None => s.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let job = JobSpec {
            command: "mackey".into(),
            series: Some("B".into()),
            rank: Some(3),
            j: Some("s1 s2 s3".into()),
            k: Some("s1".into()),
            k2: Some("s2".into()),
            groups: vec!["A2".into(), "B2".into()],
            seed: Some(7),
            verbose: true,
            ..Default::default()
        };
        let text = serde_json::to_string(&job).unwrap();
        let back: JobSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(job, back);
        assert_eq!(back.type_name().as_deref(), Some("B3"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<JobSpec>(r#"{"command":"omega","typo":1}"#).is_err());
    }
}
