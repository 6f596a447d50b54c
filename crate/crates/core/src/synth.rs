//! Seeded generators for independent and coupled binary datasets.
//!
//! The generator is SplitMix64 (Steele, Lea, Flood 2014): state advances by
//! the golden-gamma constant and the output is a two-round xor-multiply
//! finalizer. It is tiny, well specified, and easy to reproduce in other
//! languages, which keeps golden datasets portable. Draws are inverted
//! against cumulative pattern probabilities, one f64 per pattern choice.

use serde::{Deserialize, Serialize};

use crate::dataset::{BinaryDataset, MAX_VARIABLES};
use crate::error::{Error, Result};

/// SplitMix64 with the reference constants.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

const PROB_TOLERANCE: f64 = 1e-9;

/// A pattern distribution for one variable group.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupSpec {
    names: Vec<String>,
    patterns: Vec<(u64, f64)>,
}

impl GroupSpec {
    /// Validates names (distinct, non-empty) and patterns (distinct masks
    /// within the group width, positive probabilities summing to 1).
    pub fn new(names: Vec<String>, patterns: Vec<(u64, f64)>) -> Result<GroupSpec> {
        if names.is_empty() {
            return Err(Error::InvalidSpec("group lists no variables".into()));
        }
        if names.len() > MAX_VARIABLES {
            return Err(Error::InvalidSpec(format!(
                "{} variables exceed the supported maximum of {MAX_VARIABLES}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidSpec("empty variable name".into()));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidSpec(format!("duplicate variable name {name:?}")));
            }
        }
        if patterns.is_empty() {
            return Err(Error::InvalidSpec("group lists no patterns".into()));
        }
        let width_mask = mask_of_width(names.len());
        let mut sum = 0.0;
        for (i, &(bits, p)) in patterns.iter().enumerate() {
            if bits & !width_mask != 0 {
                return Err(Error::InvalidSpec(format!(
                    "pattern {} has bits beyond the {} group variables",
                    bits_string(bits, names.len()),
                    names.len()
                )));
            }
            if patterns[..i].iter().any(|&(b, _)| b == bits) {
                return Err(Error::InvalidSpec(format!(
                    "pattern {} listed twice",
                    bits_string(bits, names.len())
                )));
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "pattern {} has non-positive probability {p}",
                    bits_string(bits, names.len())
                )));
            }
            sum += p;
        }
        if (sum - 1.0).abs() > PROB_TOLERANCE {
            return Err(Error::InvalidSpec(format!("pattern probabilities sum to {sum}, not 1")));
        }
        Ok(GroupSpec { names, patterns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn width(&self) -> usize {
        self.names.len()
    }

    pub fn patterns(&self) -> &[(u64, f64)] {
        &self.patterns
    }

    pub fn probability_of(&self, bits: u64) -> Option<f64> {
        self.patterns.iter().find(|&&(b, _)| b == bits).map(|&(_, p)| p)
    }

    /// One pattern by cumulative inversion of `u` in [0, 1).
    fn draw(&self, u: f64) -> u64 {
        let mut acc = 0.0;
        for &(bits, p) in &self.patterns {
            acc += p;
            if u < acc {
                return bits;
            }
        }
        // Float round-off can leave acc slightly below 1.
        self.patterns.last().expect("patterns non-empty").0
    }
}

/// The group whose exhaustive concurrence complex is the boundary of a
/// (k-1)-simplex: k patterns, each omitting exactly one variable, uniform.
pub fn cycle_pattern_spec(k: usize, names: Vec<String>) -> Result<GroupSpec> {
    if k < 3 {
        return Err(Error::InvalidSpec(format!(
            "cycle spec needs k >= 3 (a sphere of dimension >= 1), got {k}"
        )));
    }
    if names.len() != k {
        return Err(Error::InvalidSpec(format!(
            "cycle spec for k = {k} needs exactly {k} names, got {}",
            names.len()
        )));
    }
    let full = mask_of_width(k);
    let p = 1.0 / k as f64;
    let patterns = (0..k).map(|i| (full & !(1 << i), p)).collect();
    GroupSpec::new(names, patterns)
}

/// Joint distribution over pattern pairs: either the product of the two
/// group distributions, or an explicit table whose marginals must match.
#[derive(Clone, Debug, PartialEq)]
pub enum Coupling {
    Independent,
    Explicit(Vec<(u64, u64, f64)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointSpec {
    group_a: GroupSpec,
    group_b: GroupSpec,
    coupling: Coupling,
}

impl JointSpec {
    pub fn independent(group_a: GroupSpec, group_b: GroupSpec) -> Result<JointSpec> {
        Self::validate_groups(&group_a, &group_b)?;
        Ok(JointSpec { group_a, group_b, coupling: Coupling::Independent })
    }

    /// An explicit joint table. Every pair must reference known patterns;
    /// marginals must reproduce each group's distribution.
    pub fn explicit(
        group_a: GroupSpec,
        group_b: GroupSpec,
        joint: Vec<(u64, u64, f64)>,
    ) -> Result<JointSpec> {
        Self::validate_groups(&group_a, &group_b)?;
        if joint.is_empty() {
            return Err(Error::InvalidSpec("explicit joint lists no pairs".into()));
        }
        for (i, &(a, b, p)) in joint.iter().enumerate() {
            let a_str = bits_string(a, group_a.width());
            let b_str = bits_string(b, group_b.width());
            if group_a.probability_of(a).is_none() {
                return Err(Error::InvalidSpec(format!(
                    "joint references unknown group-A pattern {a_str}"
                )));
            }
            if group_b.probability_of(b).is_none() {
                return Err(Error::InvalidSpec(format!(
                    "joint references unknown group-B pattern {b_str}"
                )));
            }
            if joint[..i].iter().any(|&(x, y, _)| (x, y) == (a, b)) {
                return Err(Error::InvalidSpec(format!("joint pair ({a_str}, {b_str}) listed twice")));
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "joint pair ({a_str}, {b_str}) has non-positive probability {p}"
                )));
            }
        }
        for &(bits, expected) in group_a.patterns() {
            let marginal: f64 = joint.iter().filter(|&&(a, _, _)| a == bits).map(|&(_, _, p)| p).sum();
            if (marginal - expected).abs() > PROB_TOLERANCE {
                return Err(Error::InvalidSpec(format!(
                    "joint marginal for group-A pattern {} is {marginal}, spec says {expected}",
                    bits_string(bits, group_a.width())
                )));
            }
        }
        for &(bits, expected) in group_b.patterns() {
            let marginal: f64 = joint.iter().filter(|&&(_, b, _)| b == bits).map(|&(_, _, p)| p).sum();
            if (marginal - expected).abs() > PROB_TOLERANCE {
                return Err(Error::InvalidSpec(format!(
                    "joint marginal for group-B pattern {} is {marginal}, spec says {expected}",
                    bits_string(bits, group_b.width())
                )));
            }
        }
        Ok(JointSpec { group_a, group_b, coupling: Coupling::Explicit(joint) })
    }

    /// Perfect coupling: the i-th pattern of A always occurs with the i-th
    /// pattern of B. Requires matching pattern probabilities.
    pub fn diagonal(group_a: GroupSpec, group_b: GroupSpec) -> Result<JointSpec> {
        Self::require_matched_probabilities(&group_a, &group_b)?;
        let joint = group_a
            .patterns()
            .iter()
            .zip(group_b.patterns())
            .map(|(&(a, p), &(b, _))| (a, b, p))
            .collect();
        Self::explicit(group_a, group_b, joint)
    }

    /// lambda = 1 is the independent product, lambda = 0 the diagonal
    /// coupling; in between, a convex mixture. Requires matching pattern
    /// probabilities so the marginals stay fixed while lambda moves.
    pub fn mixture(group_a: GroupSpec, group_b: GroupSpec, lambda: f64) -> Result<JointSpec> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidSpec(format!("mixture weight {lambda} is outside [0, 1]")));
        }
        Self::require_matched_probabilities(&group_a, &group_b)?;
        let mut joint = Vec::new();
        for (i, &(a, pa)) in group_a.patterns().iter().enumerate() {
            for (j, &(b, pb)) in group_b.patterns().iter().enumerate() {
                let diag = if i == j { pa } else { 0.0 };
                let p = lambda * pa * pb + (1.0 - lambda) * diag;
                if p > 0.0 {
                    joint.push((a, b, p));
                }
            }
        }
        Self::explicit(group_a, group_b, joint)
    }

    fn require_matched_probabilities(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
        if a.patterns().len() != b.patterns().len() {
            return Err(Error::InvalidSpec(format!(
                "coupled groups need matching pattern counts ({} vs {})",
                a.patterns().len(),
                b.patterns().len()
            )));
        }
        for (i, (&(_, pa), &(_, pb))) in a.patterns().iter().zip(b.patterns()).enumerate() {
            if (pa - pb).abs() > PROB_TOLERANCE {
                return Err(Error::InvalidSpec(format!(
                    "coupled groups need matching probabilities; pattern {i} has {pa} vs {pb}"
                )));
            }
        }
        Ok(())
    }

    fn validate_groups(a: &GroupSpec, b: &GroupSpec) -> Result<()> {
        if let Some(shared) = a.names().iter().find(|n| b.names().contains(n)) {
            return Err(Error::InvalidSpec(format!(
                "groups must not share variables; {shared:?} is in both"
            )));
        }
        if a.width() + b.width() > MAX_VARIABLES {
            return Err(Error::InvalidSpec(format!(
                "{} total variables exceed the supported maximum of {MAX_VARIABLES}",
                a.width() + b.width()
            )));
        }
        Ok(())
    }

    pub fn group_a(&self) -> &GroupSpec {
        &self.group_a
    }

    pub fn group_b(&self) -> &GroupSpec {
        &self.group_b
    }

    pub fn coupling(&self) -> &Coupling {
        &self.coupling
    }

    /// T rows, deterministic for a given seed. Independent joints draw the
    /// A pattern first, then B; explicit joints draw one pair per row from
    /// the table in listed order.
    pub fn sample(&self, t: usize, seed: u64) -> Result<BinaryDataset> {
        if t == 0 {
            return Err(Error::InvalidArgument("T >= 1 required".into()));
        }
        let mut rng = SplitMix64::new(seed);
        let shift = self.group_a.width();
        let mut rows = Vec::with_capacity(t);
        for _ in 0..t {
            let row = match &self.coupling {
                Coupling::Independent => {
                    let a = self.group_a.draw(rng.next_f64());
                    let b = self.group_b.draw(rng.next_f64());
                    a | b << shift
                }
                Coupling::Explicit(joint) => {
                    let u = rng.next_f64();
                    let mut acc = 0.0;
                    let mut chosen = joint.last().expect("joint non-empty");
                    for entry in joint {
                        acc += entry.2;
                        if u < acc {
                            chosen = entry;
                            break;
                        }
                    }
                    chosen.0 | chosen.1 << shift
                }
            };
            rows.push(row);
        }
        let names = self
            .group_a
            .names()
            .iter()
            .chain(self.group_b.names())
            .cloned()
            .collect();
        BinaryDataset::from_rows(names, rows)
    }
}

/// T rows with the two groups drawn independently.
pub fn sample_independent(
    group_a: &GroupSpec,
    group_b: &GroupSpec,
    t: usize,
    seed: u64,
) -> Result<BinaryDataset> {
    JointSpec::independent(group_a.clone(), group_b.clone())?.sample(t, seed)
}

/// T rows from an explicit joint table.
pub fn sample_coupled(joint: &JointSpec, t: usize, seed: u64) -> Result<BinaryDataset> {
    match joint.coupling() {
        Coupling::Explicit(_) => joint.sample(t, seed),
        Coupling::Independent => Err(Error::InvalidSpec(
            "sample_coupled needs an explicit joint table".into(),
        )),
    }
}

fn mask_of_width(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

fn bits_string(bits: u64, width: usize) -> String {
    (0..width).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn bits_from_string(text: &str, width: usize) -> Result<u64> {
    if text.len() != width {
        return Err(Error::InvalidSpec(format!(
            "pattern {text:?} has {} bits, group has {width} variables",
            text.len()
        )));
    }
    let mut bits = 0u64;
    for (i, c) in text.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "pattern {text:?} has invalid character {other:?}"
                )))
            }
        }
    }
    Ok(bits)
}

/// Spec-file schema: groups with bit-string patterns, optional explicit
/// joint table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JointSpecJson {
    #[serde(rename = "groupA")]
    pub group_a: GroupSpecJson,
    #[serde(rename = "groupB")]
    pub group_b: GroupSpecJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint: Option<Vec<JointEntryJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpecJson {
    pub names: Vec<String>,
    pub patterns: Vec<PatternJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PatternJson {
    pub bits: String,
    pub p: f64,
}

impl GroupSpec {
    pub fn from_json(json: &GroupSpecJson) -> Result<GroupSpec> {
        let width = json.names.len();
        let patterns = json
            .patterns
            .iter()
            .map(|pj| Ok((bits_from_string(&pj.bits, width)?, pj.p)))
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(json.names.clone(), patterns)
    }

    pub fn to_json(&self) -> GroupSpecJson {
        GroupSpecJson {
            names: self.names.clone(),
            patterns: self
                .patterns
                .iter()
                .map(|&(bits, p)| PatternJson { bits: bits_string(bits, self.width()), p })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JointEntryJson {
    pub a: String,
    pub b: String,
    pub p: f64,
}

impl JointSpec {
    pub fn from_json(json: &JointSpecJson) -> Result<JointSpec> {
        let group_a = GroupSpec::from_json(&json.group_a)?;
        let group_b = GroupSpec::from_json(&json.group_b)?;
        match &json.joint {
            None => JointSpec::independent(group_a, group_b),
            Some(entries) => {
                let joint = entries
                    .iter()
                    .map(|e| {
                        Ok((
                            bits_from_string(&e.a, group_a.width())?,
                            bits_from_string(&e.b, group_b.width())?,
                            e.p,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                JointSpec::explicit(group_a, group_b, joint)
            }
        }
    }

    pub fn to_json(&self) -> JointSpecJson {
        let joint = match &self.coupling {
            Coupling::Independent => None,
            Coupling::Explicit(entries) => Some(
                entries
                    .iter()
                    .map(|&(a, b, p)| JointEntryJson {
                        a: bits_string(a, self.group_a.width()),
                        b: bits_string(b, self.group_b.width()),
                        p,
                    })
                    .collect(),
            ),
        };
        JointSpecJson {
            group_a: self.group_a.to_json(),
            group_b: self.group_b.to_json(),
            joint,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(prefix: &str, k: usize) -> Vec<String> {
        (1..=k).map(|i| format!("{prefix}{i}")).collect()
    }

    #[test]
    fn splitmix_reference_values() {
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
        let mut rng = SplitMix64::new(42);
        assert_eq!(rng.next_u64(), 0xBDD7_3226_2FEB_6E95);
        assert_eq!(rng.next_u64(), 0x28EF_E333_B266_F103);
    }

    #[test]
    fn f64_is_unit_interval() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let u = rng.next_f64();
            assert!((0.0..1.0).contains(&u));
        }
        let mut rng = SplitMix64::new(42);
        assert!((rng.next_f64() - 0.7415648787718233).abs() < 1e-15);
    }

    #[test]
    fn cycle_spec_patterns() {
        let spec = cycle_pattern_spec(3, names("V", 3)).unwrap();
        let masks: Vec<u64> = spec.patterns().iter().map(|&(b, _)| b).collect();
        assert_eq!(masks, vec![0b110, 0b101, 0b011]);
        assert!(spec.patterns().iter().all(|&(_, p)| (p - 1.0 / 3.0).abs() < 1e-12));

        let four = cycle_pattern_spec(4, names("V", 4)).unwrap();
        assert!(four.patterns().iter().all(|&(b, _)| b.count_ones() == 3));

        assert!(matches!(cycle_pattern_spec(2, names("V", 2)), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn group_spec_validation() {
        let err = GroupSpec::new(names("V", 2), vec![(0b01, 0.5), (0b01, 0.5)]).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec(_)));
        let err = GroupSpec::new(names("V", 2), vec![(0b01, 0.4)]).unwrap_err();
        assert!(format!("{err}").contains("sum"));
        let err = GroupSpec::new(names("V", 2), vec![(0b100, 1.0)]).unwrap_err();
        assert!(format!("{err}").contains("beyond"));
    }

    #[test]
    fn point_masses_give_identical_rows() {
        let a = GroupSpec::new(names("A", 2), vec![(0b11, 1.0)]).unwrap();
        let b = GroupSpec::new(names("B", 1), vec![(0b1, 1.0)]).unwrap();
        let d = sample_independent(&a, &b, 5, 99).unwrap();
        assert_eq!(d.rows(), &[0b111; 5]);
    }

    #[test]
    fn restrictions_are_spec_patterns() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(4, names("B", 4)).unwrap();
        let d = sample_independent(&a, &b, 300, 5).unwrap();
        for &row in d.rows() {
            let part_a = row & 0b111;
            let part_b = row >> 3;
            assert!(a.patterns().iter().any(|&(m, _)| m == part_a));
            assert!(b.patterns().iter().any(|&(m, _)| m == part_b));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let d1 = sample_independent(&a, &b, 100, 7).unwrap();
        let d2 = sample_independent(&a, &b, 100, 7).unwrap();
        assert_eq!(d1, d2);
        let d3 = sample_independent(&a, &b, 100, 8).unwrap();
        assert_ne!(d1, d3);
    }

    #[test]
    fn diagonal_coupling_produces_three_patterns() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let joint = JointSpec::diagonal(a, b).unwrap();
        let d = sample_coupled(&joint, 60, 3).unwrap();
        let table = d.pattern_table();
        assert_eq!(table.entries().len(), 3);
        for &pattern in table.entries().keys() {
            assert_eq!(pattern & 0b111, pattern >> 3);
        }
    }

    #[test]
    fn bad_marginals_name_the_mismatch() {
        let a = GroupSpec::new(names("A", 1), vec![(0b1, 1.0)]).unwrap();
        let b = GroupSpec::new(names("B", 2), vec![(0b01, 0.5), (0b10, 0.5)]).unwrap();
        let err = JointSpec::explicit(a, b, vec![(0b1, 0b01, 0.8), (0b1, 0b10, 0.2)]).unwrap_err();
        let text = format!("{err}");
        assert!(text.contains("marginal"), "{text}");
        assert!(text.contains("10"), "{text}");
    }

    #[test]
    fn mixture_interpolates() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let independent = JointSpec::mixture(a.clone(), b.clone(), 1.0).unwrap();
        match independent.coupling() {
            Coupling::Explicit(entries) => assert_eq!(entries.len(), 9),
            other => panic!("unexpected {other:?}"),
        }
        let diagonal = JointSpec::mixture(a.clone(), b.clone(), 0.0).unwrap();
        match diagonal.coupling() {
            Coupling::Explicit(entries) => assert_eq!(entries.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(JointSpec::mixture(a, b, 1.5).is_err());
    }

    #[test]
    fn sample_coupled_rejects_independent() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let joint = JointSpec::independent(a, b).unwrap();
        assert!(sample_coupled(&joint, 10, 1).is_err());
    }

    #[test]
    fn zero_rows_requested_is_an_error() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let joint = JointSpec::independent(a, b).unwrap();
        assert!(matches!(joint.sample(0, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = cycle_pattern_spec(3, names("A", 3)).unwrap();
        let b = cycle_pattern_spec(3, names("B", 3)).unwrap();
        let joint = JointSpec::mixture(a, b, 0.25).unwrap();
        let json = joint.to_json();
        let text = serde_json::to_string(&json).unwrap();
        let parsed: JointSpecJson = serde_json::from_str(&text).unwrap();
        let back = JointSpec::from_json(&parsed).unwrap();
        assert_eq!(back, joint);
        assert!(text.contains("groupA"));
    }

    #[test]
    fn shared_names_across_groups_rejected() {
        let a = GroupSpec::new(names("X", 2), vec![(0b11, 1.0)]).unwrap();
        let b = GroupSpec::new(vec!["X1".into(), "Y".into()], vec![(0b11, 1.0)]).unwrap();
        assert!(matches!(JointSpec::independent(a, b), Err(Error::InvalidSpec(_))));
    }
}
