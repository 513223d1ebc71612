//! Expanding NCL flip sequences into swap sequences.

use fasncl_core::fs::{apply_swap_checked, solve_c2c, FasInstance, SearchOptions, SwapMove};
use fasncl_core::graph::VertexId;
use fasncl_core::ncl::{apply_flip_checked, FlipMove};
use fasncl_core::{SearchLimits, Status};
use fasncl_gadgets::assembly::color_classing;
use fasncl_gadgets::build_people_graph;

use crate::{assign, ReduceError, ReductionArtifact};

/// State cap for one local search.
const LOCAL_CAP: usize = 5_000_000;

/// Expands each flip into the swaps that migrate tokens through the flipped
/// edge gadget and its two endpoint vertex gadgets, found by a breadth-first
/// search confined to those gadgets.
///
/// Replaying the result from `sigma` ends at a configuration with the same
/// colors on every location as `orientation_to_config` of the final
/// orientation. People of one color may end up permuted among themselves.
pub fn translate_witness(art: &ReductionArtifact, flips: &[FlipMove]) -> Result<Vec<SwapMove>, ReduceError> {
    let g = &art.ncl;
    let x = art.fas.locations();
    let mut orientation = art.from.clone();
    let mut config = art.sigma.clone();
    let mut out = Vec::new();
    for (step, &flip) in flips.iter().enumerate() {
        let defect = |detail: String| ReduceError::Defect { step, edge: flip.0, detail };
        let next = apply_flip_checked(g, &orientation, flip)?;
        let target = art.placement(&next)?;
        let region = art.flip_region(flip.0);

        let here = art.colors_at(&config);
        let outside_moves = (0..here.len())
            .filter(|v| region.binary_search(&(*v as u32)).is_err())
            .any(|v| here[v] != target[v]);
        if outside_moves {
            return Err(defect("placement changes outside the flipped gadgets".into()));
        }

        let keep: Vec<VertexId> = region.iter().map(|&v| VertexId(v)).collect();
        let local_x = x.induced(&keep).map_err(fasncl_core::FsError::from)?;
        let local_colors: Vec<_> = region.iter().map(|&v| here[v as usize]).collect();
        let local = FasInstance::new(local_x, build_people_graph(&local_colors))?;
        let start = fasncl_core::fs::Configuration::identity(region.len());
        let local_target: Vec<_> = region.iter().map(|&v| target[v as usize]).collect();
        let goal = assign(&local_colors, &local_target)
            .ok_or_else(|| defect("gadget populations differ before and after the flip".into()))?;
        let opts = SearchOptions {
            limits: SearchLimits::states(LOCAL_CAP),
            ..SearchOptions::quotient(color_classing(&local_colors))
        };
        let r = solve_c2c(&local, &start, &goal, &opts)?;
        match r.status {
            Status::Reachable => {}
            Status::Unreachable => return Err(defect("local search found no token migration".into())),
            Status::Limit => return Err(defect("local search hit its state cap".into())),
        }
        for m in r.witness.expect("reachable has witness") {
            let global = SwapMove::new(region[m.loc_a.index()], region[m.loc_b.index()]);
            config = apply_swap_checked(&art.fas, &config, global)?;
            out.push(global);
        }
        orientation = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce;
    use crate::tests::triple_pair;
    use fasncl_core::fs::replay;
    use fasncl_core::ncl::{legal_flips, Orientation};

    fn lr(s: &str) -> Orientation {
        Orientation::from_lr(s).unwrap()
    }

    #[test]
    fn empty_witness() {
        let art = reduce(&triple_pair(), &lr("LLR"), &lr("LLR")).unwrap();
        assert!(translate_witness(&art, &[]).unwrap().is_empty());
    }

    #[test]
    fn single_flips_land_on_the_flipped_placement() {
        let g = triple_pair();
        let f = lr("LLR");
        for m in legal_flips(&g, &f).unwrap() {
            let t = f.flipped(m.0);
            let art = reduce(&g, &f, &t).unwrap();
            let swaps = translate_witness(&art, &[m]).unwrap();
            assert!(!swaps.is_empty());
            let end = replay(&art.fas, &art.sigma, &swaps).unwrap();
            assert_eq!(art.colors_at(&end), art.placement(&t).unwrap());
            assert_eq!(art.config_to_orientation(&end).unwrap(), Some(t));
        }
    }

    #[test]
    fn illegal_flip_is_an_input_error() {
        let art = reduce(&triple_pair(), &lr("LLR"), &lr("LLR")).unwrap();
        assert!(matches!(
            translate_witness(&art, &[FlipMove(2)]),
            Err(ReduceError::Ncl(fasncl_core::NclError::IllegalFlip(2)))
        ));
    }
}
