//! End-to-end comparison of NCL reachability with quotient reachability of
//! the reduced friends-and-strangers instance.

use std::collections::{BTreeMap, HashMap};

use fasncl_core::fs::{explore, replay, Component, SearchMode, SwapMove};
use fasncl_core::ncl::{enumerate_valid, replay_flips, solve_c2c, FlipMove, NclGraph, NclOptions, Orientation, VertexKind};
use fasncl_core::{SearchLimits, Status};
use fasncl_gadgets::Color;
use fasncl_reducer::{reduce, translate_witness, ReductionArtifact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::VerifyConfig;
use crate::VerifyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSource {
    /// Every ordered pair of valid orientations.
    Exhaustive,
    /// `count` ordered pairs drawn with replacement, then deduplicated.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub from: String,
    pub to: String,
    pub ncl: Status,
    pub fas: Status,
    pub ncl_witness: Option<Vec<usize>>,
    pub fas_witness: Option<Vec<[u32; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPair {
    pub from: String,
    pub to: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceStats {
    pub fas_locations: usize,
    pub largest_component: usize,
    pub fas_states_stored: usize,
    pub ncl_states_explored: usize,
    pub translated_flips: usize,
    pub translated_swaps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub instance: String,
    pub vertices: usize,
    pub edges: usize,
    pub valid_orientations: u64,
    pub pair_source: String,
    pub pairs_tested: usize,
    pub completed: usize,
    pub agreements: usize,
    pub reachable_pairs: usize,
    pub disagreements: Vec<Disagreement>,
    pub skipped: Vec<SkippedPair>,
    pub witnesses_checked: usize,
    pub witness_failures: Vec<String>,
    pub min_completed_pairs: usize,
    pub stats: ResourceStats,
}

impl EquivalenceReport {
    /// No disagreement, every witness replays, and enough pairs completed.
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
            && self.witness_failures.is_empty()
            && self.completed >= self.min_completed_pairs.min(self.pairs_tested)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "instance {}: {} vertices, {} edges, {} valid orientations\n",
            self.instance, self.vertices, self.edges, self.valid_orientations
        ));
        out.push_str(&format!(
            "pairs {} ({}): completed {}, agreements {}, reachable {}, skipped {}\n",
            self.pairs_tested,
            self.pair_source,
            self.completed,
            self.agreements,
            self.reachable_pairs,
            self.skipped.len()
        ));
        out.push_str(&format!(
            "witnesses replayed {}, failures {}\n",
            self.witnesses_checked,
            self.witness_failures.len()
        ));
        out.push_str(&format!(
            "reduced instance {} locations, largest component {}, stored states {}\n",
            self.stats.fas_locations, self.stats.largest_component, self.stats.fas_states_stored
        ));
        for d in &self.disagreements {
            out.push_str(&format!("DISAGREE {} -> {}: ncl {:?}, fas {:?}\n", d.from, d.to, d.ncl, d.fas));
        }
        for s in &self.skipped {
            out.push_str(&format!("SKIPPED {} -> {}: {}\n", s.from, s.to, s.reason));
        }
        for w in &self.witness_failures {
            out.push_str(&format!("WITNESS {w}\n"));
        }
        out.push_str(if self.passed() { "result: pass\n" } else { "result: FAIL\n" });
        out
    }
}

fn describe(g: &NclGraph) -> String {
    let and = g.kinds().iter().filter(|&&k| k == VertexKind::And).count();
    format!("{and} AND + {} OR", g.vertex_count() - and)
}

fn pattern_of(colors: &[Color]) -> Vec<u32> {
    colors.iter().map(|c| c.index() as u32).collect()
}

fn ordered_pairs(n: usize, source: PairSource) -> Vec<(usize, usize)> {
    match source {
        PairSource::Exhaustive => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect(),
        PairSource::Sampled { count, seed } => {
            if n == 0 {
                return Vec::new();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pairs: Vec<(usize, usize)> =
                (0..count).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
            pairs.sort_unstable();
            pairs.dedup();
            pairs
        }
    }
}

/// Swap sequences for single flips, keyed by the orientation they start
/// from. Each entry comes from [`translate_witness`] on a reduction whose
/// start is that orientation.
struct FlipTranslations<'g> {
    g: &'g NclGraph,
    arts: HashMap<Vec<u8>, ReductionArtifact>,
    swaps: HashMap<(Vec<u8>, usize), Vec<SwapMove>>,
}

impl<'g> FlipTranslations<'g> {
    fn new(g: &'g NclGraph) -> Self {
        FlipTranslations { g, arts: HashMap::new(), swaps: HashMap::new() }
    }

    fn flip(&mut self, o: &Orientation, e: usize) -> Result<&[SwapMove], VerifyError> {
        let key = (o.to_bits(), e);
        if !self.swaps.contains_key(&key) {
            let art = match self.arts.entry(key.0.clone()) {
                std::collections::hash_map::Entry::Occupied(a) => a.into_mut(),
                std::collections::hash_map::Entry::Vacant(slot) => slot.insert(reduce(self.g, o, o)?),
            };
            let swaps = translate_witness(art, &[FlipMove(e)])?;
            self.swaps.insert(key.clone(), swaps);
        }
        Ok(&self.swaps[&key])
    }

    /// Concatenated translation of `flips` starting at `from`.
    fn witness(&mut self, from: &Orientation, flips: &[FlipMove]) -> Result<Vec<SwapMove>, VerifyError> {
        let mut out = Vec::new();
        let mut o = from.clone();
        for &f in flips {
            out.extend_from_slice(self.flip(&o, f.0)?);
            o = o.flipped(f.0);
        }
        Ok(out)
    }
}

struct Source {
    art: ReductionArtifact,
    component: Component,
}

/// Maps the canonical snapshots along a swap path back to NCL and joins
/// consecutive ones with flip sequences; returns the joined flips.
fn snapshot_flips(
    g: &NclGraph,
    art: &ReductionArtifact,
    path: &[SwapMove],
    limits: SearchLimits,
) -> Result<Vec<FlipMove>, String> {
    let mut snapshots: Vec<Orientation> = vec![art.from.clone()];
    let mut config = art.sigma.clone();
    for &m in path {
        config = fasncl_core::fs::apply_swap(&config, m);
        match art.config_to_orientation(&config) {
            Ok(Some(o)) if snapshots.last() != Some(&o) => snapshots.push(o),
            Ok(_) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    let mut flips = Vec::new();
    let opts = NclOptions { limits, bidirectional: false };
    for w in snapshots.windows(2) {
        let r = solve_c2c(g, &w[0], &w[1], &opts).map_err(|e| e.to_string())?;
        match r.witness {
            Some(f) if r.status == Status::Reachable => flips.extend(f),
            _ => return Err(format!("snapshots {} and {} are not flip-connected", w[0].to_lr(), w[1].to_lr())),
        }
    }
    Ok(flips)
}

/// Compares NCL and quotient FAS reachability over pairs of valid
/// orientations of `g`, replaying every witness either side produces.
pub fn equivalence_test(
    g: &NclGraph,
    name: &str,
    source: PairSource,
    cfg: &VerifyConfig,
) -> Result<EquivalenceReport, VerifyError> {
    let valid = enumerate_valid(g, true)?;
    let orientations = valid.orientations.expect("collected");
    let pairs = ordered_pairs(orientations.len(), source);
    let limits = SearchLimits::states(cfg.search.max_states);
    let ncl_opts = NclOptions { limits, bidirectional: false };

    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(i, j) in &pairs {
        by_source.entry(i).or_default().push(j);
    }

    let mut report = EquivalenceReport {
        instance: format!("{name} ({})", describe(g)),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        valid_orientations: valid.count,
        pair_source: match source {
            PairSource::Exhaustive => "exhaustive".into(),
            PairSource::Sampled { count, seed } => format!("sampled {count} seed {seed}"),
        },
        pairs_tested: pairs.len(),
        completed: 0,
        agreements: 0,
        reachable_pairs: 0,
        disagreements: Vec::new(),
        skipped: Vec::new(),
        witnesses_checked: 0,
        witness_failures: Vec::new(),
        min_completed_pairs: cfg.equivalence.min_completed_pairs,
        stats: ResourceStats::default(),
    };
    let mut translations = FlipTranslations::new(g);

    for (&i, targets) in &by_source {
        let f = &orientations[i];
        let art = reduce(g, f, f)?;
        let component = explore(&art.fas, &art.sigma, &SearchMode::Quotient(art.classing()), cfg.search.max_states)?;
        report.stats.fas_locations = art.location_count();
        report.stats.largest_component = report.stats.largest_component.max(component.len());
        report.stats.fas_states_stored += component.len();
        let src = Source { art, component };

        for &j in targets {
            let t = &orientations[j];
            let ncl = solve_c2c(g, f, t, &ncl_opts)?;
            report.stats.ncl_states_explored += ncl.states_explored;
            let target_colors = src.art.placement(t)?;
            let found = src.component.index_of(&pattern_of(&target_colors));
            let fas = match found {
                Some(_) => Status::Reachable,
                None if src.component.is_complete() => Status::Unreachable,
                None => Status::Limit,
            };
            if ncl.status == Status::Limit || fas == Status::Limit {
                let side = if ncl.status == Status::Limit { "NCL search" } else { "FAS component scan" };
                report.skipped.push(SkippedPair {
                    from: f.to_lr(),
                    to: t.to_lr(),
                    reason: format!("{side} reached {} stored states", cfg.search.max_states),
                });
                continue;
            }
            report.completed += 1;
            let fas_path = found.map(|idx| src.component.path_to(idx));
            if ncl.status == fas {
                report.agreements += 1;
            } else {
                report.disagreements.push(Disagreement {
                    from: f.to_lr(),
                    to: t.to_lr(),
                    ncl: ncl.status,
                    fas,
                    ncl_witness: ncl.witness.as_ref().map(|w| w.iter().map(|m| m.0).collect()),
                    fas_witness: fas_path.as_ref().map(|p| p.iter().map(|m| [m.loc_a.0, m.loc_b.0]).collect()),
                });
            }
            if ncl.status == Status::Reachable {
                report.reachable_pairs += 1;
            }
            check_witnesses(g, &src, f, t, &target_colors, ncl.witness.as_deref(), fas_path.as_deref(), limits, &mut translations, &mut report);
        }
    }
    report.stats.translated_flips = translations.swaps.len();
    report.stats.translated_swaps = translations.swaps.values().map(Vec::len).sum();
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn check_witnesses(
    g: &NclGraph,
    src: &Source,
    f: &Orientation,
    t: &Orientation,
    target_colors: &[Color],
    flips: Option<&[FlipMove]>,
    fas_path: Option<&[SwapMove]>,
    limits: SearchLimits,
    translations: &mut FlipTranslations<'_>,
    report: &mut EquivalenceReport,
) {
    let pair = format!("{} -> {}", f.to_lr(), t.to_lr());
    let art = &src.art;
    if let Some(flips) = flips {
        report.witnesses_checked += 1;
        match replay_flips(g, f, flips) {
            Ok(end) if &end == t => {}
            Ok(end) => report.witness_failures.push(format!("{pair}: flips end at {}", end.to_lr())),
            Err(e) => report.witness_failures.push(format!("{pair}: flip replay: {e}")),
        }
        report.witnesses_checked += 1;
        match translations.witness(f, flips) {
            Ok(swaps) => match replay(&art.fas, &art.sigma, &swaps) {
                Ok(end) if art.colors_at(&end) == target_colors => {}
                Ok(_) => report.witness_failures.push(format!("{pair}: translated swaps end on another placement")),
                Err(e) => report.witness_failures.push(format!("{pair}: translated replay: {e}")),
            },
            Err(e) => report.witness_failures.push(format!("{pair}: translation: {e}")),
        }
    }
    if let Some(path) = fas_path {
        report.witnesses_checked += 1;
        match replay(&art.fas, &art.sigma, path) {
            Ok(end) if art.colors_at(&end) == target_colors => {}
            Ok(_) => report.witness_failures.push(format!("{pair}: swap path ends on another placement")),
            Err(e) => report.witness_failures.push(format!("{pair}: swap replay: {e}")),
        }
        report.witnesses_checked += 1;
        match snapshot_flips(g, art, path, limits) {
            Ok(joined) => match replay_flips(g, f, &joined) {
                Ok(end) if &end == t => {}
                Ok(end) => report.witness_failures.push(format!("{pair}: snapshot flips end at {}", end.to_lr())),
                Err(e) => report.witness_failures.push(format!("{pair}: snapshot flip replay: {e}")),
            },
            Err(e) => report.witness_failures.push(format!("{pair}: {e}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    #[test]
    fn sampled_pairs_are_deterministic() {
        let a = ordered_pairs(10, PairSource::Sampled { count: 20, seed: 7 });
        let b = ordered_pairs(10, PairSource::Sampled { count: 20, seed: 7 });
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ordered_pairs(3, PairSource::Exhaustive).len(), 9);
        assert!(ordered_pairs(0, PairSource::Sampled { count: 5, seed: 1 }).is_empty());
    }

    #[test]
    fn and_pair_is_frozen_on_both_sides() {
        let cfg = VerifyConfig::default();
        let r = equivalence_test(&instances::and_pair(), "and-pair", PairSource::Exhaustive, &cfg).unwrap();
        assert_eq!(r.pairs_tested, 4);
        assert_eq!(r.completed, 4);
        assert_eq!(r.reachable_pairs, 2);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn quota_blocks_vacuous_passes() {
        let mut r = equivalence_test(
            &instances::triple_pair(),
            "triple-pair",
            PairSource::Sampled { count: 3, seed: 1 },
            &VerifyConfig::default(),
        )
        .unwrap();
        assert!(r.passed());
        r.completed = 0;
        r.skipped.push(SkippedPair { from: "LLR".into(), to: "RRL".into(), reason: "test".into() });
        assert!(!r.passed());
    }
}
