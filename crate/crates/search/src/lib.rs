//! Seeded, parallel counterexample searches.
//!
//! Instance `i` of a campaign with seed `s` is drawn from a ChaCha stream keyed by `(s, i)`,
//! so the instance set does not depend on how work is split across threads. Instances are
//! checked in parallel, then deduplicated in index order.

pub mod canon;
pub mod generate;

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use realstack_core::cohomology::h1;
use realstack_core::gerbe::MonodromyGerbe;
use realstack_core::group::{catalog, involutions, GGroup};
use realstack_core::quotient::{real_locus, smith_thom_finite, torsor_oracle, FiniteGSpace};
use realstack_core::schema::{self, GGroupDoc, GerbeDoc, SpaceDoc, SCHEMA};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `#H¹(Γ) ≤ #conjugacy classes` over the group catalog.
    Bgamma,
    /// Real points versus inertia for finite quotients, plus the torsor oracle.
    Quotient,
    /// The real-circle inequality for gerbes with band `(ℤ/2)^n`.
    Gerbe2torsion,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Bgamma => "bgamma",
            Kind::Quotient => "quotient",
            Kind::Gerbe2torsion => "gerbe2torsion",
        })
    }
}

impl FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "bgamma" => Ok(Kind::Bgamma),
            "quotient" => Ok(Kind::Quotient),
            "gerbe2torsion" => Ok(Kind::Gerbe2torsion),
            _ => Err(format!(
                "unknown search kind `{s}` (expected bgamma, quotient or gerbe2torsion)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Campaign {
    pub kind: Kind,
    pub seed: u64,
    /// Number of random instances; the catalog sweep ignores it.
    pub count: u64,
    /// Largest group order for `bgamma` and `quotient`.
    pub max_order: usize,
    pub max_carrier: usize,
    /// Largest `n` for the band `(ℤ/2)^n`.
    pub max_rank: u32,
    pub max_genus: u32,
    pub workers: usize,
}

impl Campaign {
    pub fn new(kind: Kind, seed: u64, count: u64) -> Self {
        let max_order = if kind == Kind::Bgamma { 24 } else { 8 };
        Campaign {
            kind,
            seed,
            count,
            max_order,
            max_carrier: 6,
            max_rank: 3,
            max_genus: 4,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: Kind,
    pub seed: u64,
    pub index: u64,
    /// The instance as an input document for the matching CLI subcommand.
    pub instance: Value,
    pub lhs: i64,
    pub rhs: i64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub campaign: Campaign,
    pub checked: u64,
    pub duplicates: u64,
    pub violations: Vec<Violation>,
    pub wall_time_ms: u64,
}

impl Summary {
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["schema"] = json!(SCHEMA);
        v
    }

    /// The summary without its timing, for comparing runs.
    pub fn deterministic_part(&self) -> (Campaign, u64, u64, &[Violation]) {
        (
            self.campaign.clone(),
            self.checked,
            self.duplicates,
            &self.violations,
        )
    }
}

/// The random stream for instance `index` of a campaign seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Outcome of one instance: a deduplication key and a violation if one was found.
struct Checked {
    key: String,
    violation: Option<(Value, i64, i64, String)>,
}

pub fn run(campaign: &Campaign) -> Summary {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(campaign.workers.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Checked> = pool.install(|| match campaign.kind {
        Kind::Bgamma => {
            let ggroups = catalog_ggroups(campaign.max_order);
            ggroups.par_iter().map(check_bgamma).collect()
        }
        Kind::Quotient => {
            let universe = generate::SpaceUniverse::new(campaign.max_order, campaign.max_carrier);
            (0..campaign.count)
                .into_par_iter()
                .map(|i| check_space(&universe.sample(&mut instance_rng(campaign.seed, i))))
                .collect()
        }
        Kind::Gerbe2torsion => {
            let bands = generate::BandCache::new(campaign.max_rank);
            (0..campaign.count)
                .into_par_iter()
                .map(|i| {
                    let g = generate::random_gerbe(
                        &mut instance_rng(campaign.seed, i),
                        &bands,
                        campaign.max_genus,
                    );
                    check_gerbe(&g)
                })
                .collect()
        }
    });
    let mut seen = BTreeSet::new();
    let mut checked = 0;
    let mut duplicates = 0;
    let mut violations = Vec::new();
    for (index, r) in results.into_iter().enumerate() {
        if !seen.insert(r.key) {
            duplicates += 1;
            continue;
        }
        checked += 1;
        if let Some((instance, lhs, rhs, detail)) = r.violation {
            violations.push(Violation {
                kind: campaign.kind,
                seed: campaign.seed,
                index: index as u64,
                instance,
                lhs,
                rhs,
                detail,
            });
        }
    }
    Summary {
        campaign: campaign.clone(),
        checked,
        duplicates,
        violations,
        wall_time_ms: start.elapsed().as_millis() as u64,
    }
}

fn catalog_ggroups(max_order: usize) -> Vec<GGroup> {
    catalog(max_order)
        .into_iter()
        .flat_map(|(_, g)| {
            involutions(&g)
                .expect("catalog orders are within the automorphism bound")
                .into_iter()
                .map(move |s| GGroup::new(g.clone(), s).expect("involution"))
        })
        .collect()
}

fn bgamma_instance(gg: &GGroup) -> Value {
    serde_json::to_value(GGroupDoc::from_ggroup(gg)).expect("plain data")
}

fn check_bgamma(gg: &GGroup) -> Checked {
    let lhs = h1(gg).len() as i64;
    let rhs = gg.group().conjugacy_classes().len() as i64;
    let instance = bgamma_instance(gg);
    let key = instance.to_string();
    let violation = (lhs > rhs).then(|| {
        (
            instance,
            lhs,
            rhs,
            "#H¹ exceeds the number of conjugacy classes".to_string(),
        )
    });
    Checked { key, violation }
}

fn check_space(space: &FiniteGSpace) -> Checked {
    let v = smith_thom_finite(space);
    let oracle = torsor_oracle(space).len();
    let decomposition = real_locus(space).total();
    let instance = serde_json::to_value(SpaceDoc::from_space(space, None)).expect("plain data");
    let violation = if !v.holds {
        Some((
            instance,
            v.real as i64,
            v.inertia as i64,
            "real points exceed inertia classes".to_string(),
        ))
    } else if oracle != decomposition {
        Some((
            instance,
            oracle as i64,
            decomposition as i64,
            "torsor oracle disagrees with the twisted decomposition".to_string(),
        ))
    } else {
        None
    };
    Checked {
        key: canon::space_key(space),
        violation,
    }
}

fn check_gerbe(g: &MonodromyGerbe) -> Checked {
    let instance = serde_json::to_value(GerbeDoc::from_gerbe(g, None)).expect("plain data");
    let key = instance.to_string();
    let violation = match g.smith_thom() {
        Err(e) => Some((
            instance,
            0,
            0,
            format!("generated gerbe could not be evaluated: {e}"),
        )),
        Ok(v) => {
            let circles = v
                .circles
                .expect("generated gerbes have only circles over a proper base");
            if !v.holds {
                Some((
                    instance,
                    v.real as i64,
                    v.inertia as i64,
                    "real h* exceeds inertia h*".to_string(),
                ))
            } else if !circles.holds {
                Some((
                    instance,
                    circles.lhs as i64,
                    circles.rhs,
                    "circle inequality fails".to_string(),
                ))
            } else {
                None
            }
        }
    };
    Checked { key, violation }
}

/// Re-runs the check on a stored violation. `Ok(true)` means it still fails.
pub fn replay(v: &Violation) -> Result<bool, String> {
    let text = v.instance.to_string();
    let checked = match v.kind {
        Kind::Bgamma => {
            let doc: GGroupDoc =
                serde_json::from_value(v.instance.clone()).map_err(|e| e.to_string())?;
            check_bgamma(&doc.build("").map_err(|e| e.to_string())?)
        }
        Kind::Quotient => {
            let doc: SpaceDoc = schema::parse_document(&text).map_err(|e| e.to_string())?;
            check_space(&doc.build().map_err(|e| e.to_string())?)
        }
        Kind::Gerbe2torsion => {
            let doc: GerbeDoc = schema::parse_document(&text).map_err(|e| e.to_string())?;
            check_gerbe(&doc.build().map_err(|e| e.to_string())?)
        }
    };
    Ok(checked.violation.is_some())
}

/// Writes each violation as a standalone replay file `<kind>-<seed>-<index>.json`.
pub fn write_violations(dir: &Path, violations: &[Violation]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for v in violations {
        let name = format!("{}-{}-{}.json", v.kind, v.seed, v.index);
        let mut value = serde_json::to_value(v).expect("plain data");
        value["schema"] = json!(SCHEMA);
        std::fs::write(dir.join(name), serde_json::to_string_pretty(&value)? + "\n")?;
    }
    Ok(())
}
