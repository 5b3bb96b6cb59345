//! Mechanical checks of the component-count identities, reported as
//! integer comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{
    gamma_poset_over, has_strongly_embedded_subgroup, s_poset_over, x_of_sylow, GammaPoset, SPoset,
};
use crate::chartab::{decompose_restriction, induce, irr_table_mod, SemidirectDecomposition};
use crate::error::{Error, Result};
use crate::group::{p_log, GroupTable};
use crate::lattice::{common_intersection_of_order, enumerate_p_subgroups, frattini_of_p_group};
use crate::modular::dixon_modulus;
use crate::subgroup::{all_subgroups, center, normalizer, omega1, Subgroup};

/// A verifiable statement about components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Claim {
    #[serde(rename = "ThmA")]
    ThmA,
    #[serde(rename = "ThmB")]
    ThmB,
    #[serde(rename = "ThmC")]
    ThmC,
    #[serde(rename = "L2.3")]
    L2_3,
    #[serde(rename = "L4.1")]
    L4_1,
    #[serde(rename = "L4.2")]
    L4_2,
    #[serde(rename = "L4.3")]
    L4_3,
    #[serde(rename = "L4.4")]
    L4_4,
    #[serde(rename = "L4.6")]
    L4_6,
    #[serde(rename = "Cor2.2")]
    Cor2_2,
}

impl Claim {
    pub const ALL: [Claim; 10] = [
        Claim::ThmA,
        Claim::ThmB,
        Claim::ThmC,
        Claim::L2_3,
        Claim::L4_1,
        Claim::L4_2,
        Claim::L4_3,
        Claim::L4_4,
        Claim::L4_6,
        Claim::Cor2_2,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::ThmA => "ThmA",
            Claim::ThmB => "ThmB",
            Claim::ThmC => "ThmC",
            Claim::L2_3 => "L2.3",
            Claim::L4_1 => "L4.1",
            Claim::L4_2 => "L4.2",
            Claim::L4_3 => "L4.3",
            Claim::L4_4 => "L4.4",
            Claim::L4_6 => "L4.6",
            Claim::Cor2_2 => "Cor2.2",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    /// Accepts `ThmA` or the short form `A`, and likewise for B and C.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.strip_prefix("Thm").unwrap_or(s);
        Ok(match s {
            "A" => Claim::ThmA,
            "B" => Claim::ThmB,
            "C" => Claim::ThmC,
            "L2.3" => Claim::L2_3,
            "L4.1" => Claim::L4_1,
            "L4.2" => Claim::L4_2,
            "L4.3" => Claim::L4_3,
            "L4.4" => Claim::L4_4,
            "L4.6" => Claim::L4_6,
            "Cor2.2" => Claim::Cor2_2,
            other => {
                return Err(Error::PreconditionViolated(format!("unknown claim {other}")))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inapplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// One claim checked on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub p: u64,
    pub e: u32,
    pub claim: Claim,
    pub observed: BTreeMap<String, i64>,
    pub expected: BTreeMap<String, i64>,
    pub status: Status,
    pub millis: u64,
    /// Why a claim was inapplicable; not serialized.
    #[serde(skip)]
    pub note: String,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    group: String,
    p: u64,
    e: u32,
    claim: Claim,
    observed: String,
    expected: String,
    status: Status,
    millis: u64,
}

fn flatten(m: &BTreeMap<String, i64>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn unflatten(s: &str) -> Result<BTreeMap<String, i64>> {
    s.split(';')
        .filter(|kv| !kv.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::PreconditionViolated(format!("bad CSV cell {kv}")))?;
            let v = v
                .parse()
                .map_err(|_| Error::PreconditionViolated(format!("bad CSV value {v}")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

impl VerificationReport {
    /// CSV with the JSON field names as columns; maps are written `k=v;k=v`.
    pub fn to_csv(reports: &[VerificationReport]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in reports {
            w.serialize(CsvRow {
                group: r.group.clone(),
                p: r.p,
                e: r.e,
                claim: r.claim,
                observed: flatten(&r.observed),
                expected: flatten(&r.expected),
                status: r.status,
                millis: r.millis,
            })
            .expect("in-memory CSV write");
        }
        if reports.is_empty() {
            return "group,p,e,claim,observed,expected,status,millis\n".to_string();
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("UTF-8 CSV")
    }

    pub fn from_csv(text: &str) -> Result<Vec<VerificationReport>> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        r.deserialize::<CsvRow>()
            .map(|row| {
                let row = row.map_err(|e| Error::PreconditionViolated(e.to_string()))?;
                Ok(VerificationReport {
                    group: row.group,
                    p: row.p,
                    e: row.e,
                    claim: row.claim,
                    observed: unflatten(&row.observed)?,
                    expected: unflatten(&row.expected)?,
                    status: row.status,
                    millis: row.millis,
                    note: String::new(),
                })
            })
            .collect()
    }
}

type Values = BTreeMap<String, i64>;

enum Outcome {
    Compared(Values, Values),
    Inapplicable(String),
}

fn values(pairs: &[(&str, i64)]) -> Values {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn inapplicable(reason: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome::Inapplicable(reason.into()))
}

/// Shared, lazily computed data for checking claims on one `(G, p, e)`.
pub struct Analysis {
    g: Arc<GroupTable>,
    p: u64,
    e: u32,
    s: OnceLock<SPoset>,
    gamma: OnceLock<Result<GammaPoset>>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl Analysis {
    pub fn new(g: &Arc<GroupTable>, p: u64, e: u32) -> Self {
        Analysis {
            g: g.clone(),
            p,
            e,
            s: OnceLock::new(),
            gamma: OnceLock::new(),
            subgroups: OnceLock::new(),
        }
    }

    pub fn s(&self) -> &SPoset {
        self.s
            .get_or_init(|| s_poset_over(Arc::new(enumerate_p_subgroups(&self.g, self.p, self.e))))
    }

    pub fn gamma(&self) -> Result<&GammaPoset> {
        self.gamma
            .get_or_init(|| gamma_poset_over(self.s().lattice().clone()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| all_subgroups(&self.g))
    }

    fn p_log_order(&self) -> Option<u32> {
        p_log(self.g.order(), self.p)
    }

    fn threshold(&self) -> usize {
        (self.p as usize).pow(self.e + 1)
    }

    /// Checks one claim; unmet hypotheses yield an inapplicable report.
    pub fn verify(&self, claim: Claim) -> Result<VerificationReport> {
        let start = Instant::now();
        let outcome = match claim {
            Claim::ThmA => self.theorem_a(),
            Claim::ThmB => self.theorem_b(),
            Claim::ThmC => self.theorem_c(),
            Claim::L2_3 => self.direct_product_connected(),
            Claim::L4_1 => self.p_group_basics(),
            Claim::L4_2 => self.cyclic_or_rank_two(),
            Claim::L4_3 => self.extraspecial_characters(),
            Claim::L4_4 => self.frattini_of_order_p(),
            Claim::L4_6 => self.semidirect_square(),
            Claim::Cor2_2 => self.s_disconnected_iff_embedded(),
        }?;
        let millis = start.elapsed().as_millis() as u64;
        let (observed, expected, status, note) = match outcome {
            Outcome::Compared(o, x) => {
                let status = if o == x { Status::Pass } else { Status::Fail };
                (o, x, status, String::new())
            }
            Outcome::Inapplicable(why) => (Values::new(), Values::new(), Status::Inapplicable, why),
        };
        Ok(VerificationReport {
            group: self.g.label().to_string(),
            p: self.p,
            e: self.e,
            claim,
            observed,
            expected,
            status,
            millis,
            note,
        })
    }

    fn sylow(&self) -> Option<usize> {
        self.s().lattice().sylow_ids().first().copied()
    }

    fn gamma_count(&self) -> Result<i64> {
        Ok(self.gamma()?.component_count() as i64)
    }

    /// A subgroup of the Sylow isomorphic to `C_{p^{e+1}}²` or elementary
    /// abelian of order `p^{e+2}`, found by exponent and rank tests.
    pub fn sylow_has_large_abelian(&self) -> bool {
        let Some(sylow) = self.sylow() else {
            return false;
        };
        let l = self.s().lattice();
        let g = &self.g;
        let p = self.p as usize;
        let f = self.e + 1;
        let homocyclic = p.pow(2 * f);
        let elementary = p.pow(self.e + 2);
        l.nodes_within(l.node(sylow)).into_iter().any(|i| {
            let h = l.node(i);
            if !h.is_abelian() {
                return false;
            }
            let rank_two = || h.members().iter().filter(|&&x| g.pow(x, p) == 0).count() == p * p;
            (h.order() == homocyclic && h.exponent() == p.pow(f) && rank_two())
                || (h.order() == elementary && h.exponent() == p)
        })
    }

    fn theorem_a(&self) -> Result<Outcome> {
        if self.g.order() % self.threshold() != 0 {
            return inapplicable("p^(e+1) does not divide |G|; both posets are empty");
        }
        let s = self.s();
        let gamma = self.gamma()?;
        let sylow = self.sylow().expect("Sylow exists when p^(e+1) divides |G|");
        let x = x_of_sylow(gamma, s, sylow)? as i64;
        let sc = s.component_count() as i64;
        let mut observed = values(&[("gamma_components", gamma.component_count() as i64)]);
        let mut expected = values(&[("gamma_components", x * sc)]);
        if self.sylow_has_large_abelian() {
            let (orbit, stab) = s.component_stabilizer(sylow)?;
            let index = (self.g.order() / stab.order()) as i64;
            debug_assert_eq!(orbit as i64, index);
            observed.insert("s_components".into(), sc);
            expected.insert("s_components".into(), index);
            observed.insert("x_components".into(), x);
            expected.insert("x_components".into(), 1);
        }
        Ok(Outcome::Compared(observed, expected))
    }

    fn theorem_b(&self) -> Result<Outcome> {
        if self.e != 0 {
            return inapplicable("stated for e = 0");
        }
        if self.g.order() % self.p as usize != 0 {
            return inapplicable("p does not divide |G|");
        }
        let l = self.s().lattice();
        let sylow = l.node(self.sylow().expect("Sylow exists"));
        let p = self.p as usize;
        let order_p_in_sylow = l
            .nodes_within(sylow)
            .into_iter()
            .filter(|&i| l.node(i).order() == p)
            .count();
        let unique = order_p_in_sylow == 1;
        let embedded = has_strongly_embedded_subgroup(&self.g, self.p, 0).is_some();
        let count = self.gamma_count()?;
        let mut observed = values(&[("disconnected", i64::from(count > 1))]);
        let mut expected = values(&[("disconnected", i64::from(unique || embedded))]);
        if unique {
            let omega = omega1(sylow, self.p)?;
            let n = normalizer(&omega);
            observed.insert("gamma_components".into(), count);
            expected.insert(
                "gamma_components".into(),
                (p * (self.g.order() / n.order())) as i64,
            );
        }
        Ok(Outcome::Compared(observed, expected))
    }

    fn require_p_group(&self, min_log: u32) -> std::result::Result<u32, String> {
        match self.p_log_order() {
            Some(n) if n >= min_log => Ok(n),
            Some(_) => Err(format!("needs |G| ≥ p^{min_log}")),
            None => Err("G is not a p-group".into()),
        }
    }

    fn theorem_c(&self) -> Result<Outcome> {
        if self.e != 1 {
            return inapplicable("stated for e = 1");
        }
        if let Err(why) = self.require_p_group(2) {
            return inapplicable(why);
        }
        let i = common_intersection_of_order(&self.g, self.p, 2)?;
        Ok(Outcome::Compared(
            values(&[("gamma_components", self.gamma_count()?)]),
            values(&[("gamma_components", i.order() as i64)]),
        ))
    }

    fn s_disconnected_iff_embedded(&self) -> Result<Outcome> {
        if self.g.order() % self.threshold() != 0 {
            return inapplicable("p^(e+1) does not divide |G|");
        }
        let disconnected = self.s().component_count() > 1;
        let embedded = has_strongly_embedded_subgroup(&self.g, self.p, self.e).is_some();
        Ok(Outcome::Compared(
            values(&[("s_disconnected", i64::from(disconnected))]),
            values(&[("s_disconnected", i64::from(embedded))]),
        ))
    }

    fn direct_product_connected(&self) -> Result<Outcome> {
        if let Err(why) = self.require_p_group(1) {
            return inapplicable(why);
        }
        let factors = finest_direct_decomposition(&self.g, self.subgroups());
        if factors.len() < 2 {
            return inapplicable("G is directly indecomposable");
        }
        if factors
            .iter()
            .any(|t| self.g.order() / t.order() < self.threshold())
        {
            return inapplicable("some factor has index below p^(e+1)");
        }
        Ok(Outcome::Compared(
            values(&[("gamma_components", self.gamma_count()?)]),
            values(&[("gamma_components", 1)]),
        ))
    }

    fn p_group_basics(&self) -> Result<Outcome> {
        let n = match self.require_p_group(1) {
            Ok(n) => n,
            Err(why) => return inapplicable(why),
        };
        let g = &self.g;
        let z = center(g);
        let subs = self.subgroups();
        let normal: Vec<&Subgroup> = subs.iter().filter(|h| h.is_normal()).collect();
        let meets_center = normal
            .iter()
            .filter(|h| h.order() > 1)
            .all(|h| h.intersection(&z).order() > 1);
        let p = self.p as usize;
        let normal_orders = (0..=n)
            .filter(|&i| normal.iter().any(|h| h.order() == p.pow(i)))
            .count();
        let order_p2: Vec<&Subgroup> = subs.iter().filter(|h| h.order() == p * p).collect();
        let unique_case = order_p2.len() != 1
            || g.exponent() == g.order()
            || (g.order() == p * p && g.exponent() == p);
        Ok(Outcome::Compared(
            values(&[
                ("center_nontrivial", i64::from(z.order() > 1)),
                ("normal_subgroups_meet_center", i64::from(meets_center)),
                ("normal_subgroup_orders", normal_orders as i64),
                ("unique_order_p2_subgroup_case", i64::from(unique_case)),
            ]),
            values(&[
                ("center_nontrivial", 1),
                ("normal_subgroups_meet_center", 1),
                ("normal_subgroup_orders", n as i64 + 1),
                ("unique_order_p2_subgroup_case", 1),
            ]),
        ))
    }

    fn cyclic_or_rank_two(&self) -> Result<Outcome> {
        if self.e != 1 {
            return inapplicable("stated for e = 1");
        }
        if let Err(why) = self.require_p_group(2) {
            return inapplicable(why);
        }
        let g = &self.g;
        let p = self.p as usize;
        let cyclic = g.exponent() == g.order();
        let elementary_p2 = g.order() == p * p && g.exponent() == p;
        if !(cyclic || elementary_p2) {
            return inapplicable("G is neither cyclic nor C_p × C_p");
        }
        Ok(Outcome::Compared(
            values(&[("gamma_components", self.gamma_count()?)]),
            values(&[("gamma_components", (p * p) as i64)]),
        ))
    }

    fn extraspecial_characters(&self) -> Result<Outcome> {
        let g = &self.g;
        if self.p_log_order() != Some(3) || g.is_abelian() {
            return inapplicable("needs a nonabelian group of order p^3");
        }
        let p = self.p;
        let whole = Subgroup::whole(g);
        let phi = frattini_of_p_group(&whole, p)?;
        let q = dixon_modulus(g.order(), g.exponent())?;
        let tg = irr_table_mod(g, q)?;
        let tphi = irr_table_mod(phi.local(), q)?;
        let mut satisfying = 0;
        for theta in 1..tphi.len() {
            let ind = induce(&phi, &tphi, &tphi.char(theta).values, &tg)?;
            let nonzero: Vec<usize> = (0..tg.len()).filter(|&c| ind.decomposition[c] != 0).collect();
            let [chi] = nonzero[..] else { continue };
            if ind.decomposition[chi] != p {
                continue;
            }
            let back = decompose_restriction(&whole, &tg, chi, &phi, &tphi)?;
            let mut want = vec![0; tphi.len()];
            want[theta] = p;
            if back == want {
                satisfying += 1;
            }
        }
        Ok(Outcome::Compared(
            values(&[("characters_satisfying", satisfying)]),
            values(&[("characters_satisfying", tphi.len() as i64 - 1)]),
        ))
    }

    fn frattini_of_order_p(&self) -> Result<Outcome> {
        if self.e != 1 {
            return inapplicable("stated for e = 1");
        }
        if self.p_log_order() != Some(3) {
            return inapplicable("needs |G| = p^3");
        }
        let phi = frattini_of_p_group(&Subgroup::whole(&self.g), self.p)?;
        if phi.order() != self.p as usize {
            return inapplicable("Frattini subgroup does not have order p");
        }
        Ok(Outcome::Compared(
            values(&[("gamma_components", self.gamma_count()?)]),
            values(&[("gamma_components", self.p as i64)]),
        ))
    }

    /// A normal `H` and a complement `K`, both of order `p²`.
    pub fn semidirect_square_decomposition(&self) -> Option<SemidirectDecomposition> {
        if self.p_log_order() != Some(4) {
            return None;
        }
        let p2 = (self.p * self.p) as usize;
        let subs: Vec<&Subgroup> = self.subgroups().iter().filter(|h| h.order() == p2).collect();
        subs.iter().filter(|h| h.is_normal()).find_map(|h| {
            subs.iter()
                .find(|k| h.intersection(k).order() == 1)
                .and_then(|k| SemidirectDecomposition::new((*h).clone(), (*k).clone()).ok())
        })
    }

    fn semidirect_square(&self) -> Result<Outcome> {
        if self.e != 1 {
            return inapplicable("stated for e = 1");
        }
        if self.semidirect_square_decomposition().is_none() {
            return inapplicable("no normal subgroup of order p^2 with a complement of order p^2");
        }
        Ok(Outcome::Compared(
            values(&[("gamma_components", self.gamma_count()?)]),
            values(&[("gamma_components", 1)]),
        ))
    }
}

fn commute(a: &Subgroup, b: &Subgroup) -> bool {
    let g = a.parent();
    a.members()
        .iter()
        .all(|&x| b.members().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// Splits `G` into directly indecomposable factors, given all subgroups of `G`.
pub fn finest_direct_decomposition(g: &Arc<GroupTable>, subgroups: &[Subgroup]) -> Vec<Subgroup> {
    fn split(x: Subgroup, subgroups: &[Subgroup]) -> Vec<Subgroup> {
        let inside: Vec<&Subgroup> = subgroups
            .iter()
            .filter(|h| h.order() > 1 && h.order() < x.order() && h.is_subgroup_of(&x))
            .collect();
        for a in &inside {
            for b in &inside {
                if a.order() * b.order() == x.order()
                    && a.order() <= b.order()
                    && a.intersection(b).order() == 1
                    && commute(a, b)
                {
                    let mut out = split((*a).clone(), subgroups);
                    out.extend(split((*b).clone(), subgroups));
                    return out;
                }
            }
        }
        vec![x]
    }
    split(Subgroup::whole(g), subgroups)
}

/// Checks one claim on `(G, p, e)`.
pub fn verify(g: &Arc<GroupTable>, p: u64, e: u32, claim: Claim) -> Result<VerificationReport> {
    Analysis::new(g, p, e).verify(claim)
}

/// Checks several claims, sharing the poset builds.
pub fn verify_many(
    g: &Arc<GroupTable>,
    p: u64,
    e: u32,
    claims: &[Claim],
) -> Result<Vec<VerificationReport>> {
    let a = Analysis::new(g, p, e);
    claims.iter().map(|&c| a.verify(c)).collect()
}
