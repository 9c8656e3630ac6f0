//! Exhaustive search over partition data.

use alloc::format;
use alloc::vec::Vec;

use crate::admissibility::{evaluate, ClosedFormData, LCandidate, Part, ScalarVals};
use crate::Q64;

/// Part of each j (`None` where k_{j,1} = k_{j,2}).
pub type Partition = Vec<Option<Part>>;

fn choices(vals: &ScalarVals) -> Vec<Part> {
    use super::CaseKind::*;
    match vals.kind() {
        Steinberg | PsNonSplit => alloc::vec![Part::I1, Part::I2],
        PsSplit => alloc::vec![Part::I1, Part::I2, Part::I3],
        PsIrreducible | ScUnramified | ScRamified => {
            alloc::vec![
                Part::Point { zero_product: true },
                Part::Point {
                    zero_product: false
                }
            ]
        }
    }
}

/// Every partition of {j : k_{j,1} < k_{j,2}} passing the closed-form
/// conditions. With `l_condition` (PS-split with a = b and χ_1 = χ_2 on
/// inertia) the 𝔏_j·x_E are taken pairwise distinct, so each I_3 member
/// yields its own candidate with t_j = 1 at that j alone.
pub fn enumerate_admissible_partitions(
    vals: &ScalarVals,
    e_k: i64,
    weights: &[(i64, i64)],
    l_condition: bool,
) -> Vec<Partition> {
    let open: Vec<usize> = (0..weights.len())
        .filter(|&j| weights[j].0 < weights[j].1)
        .collect();
    let opts = choices(vals);
    let total = opts.len().pow(open.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut parts: Partition = alloc::vec![None; weights.len()];
        let mut c = code;
        for &j in &open {
            parts[j] = Some(opts[c % opts.len()]);
            c /= opts.len();
        }
        let l_candidates = if l_condition {
            open.iter()
                .filter(|&&j| parts[j] == Some(Part::I3))
                .map(|&j| {
                    let mut t = alloc::vec![Q64::from_integer(0); weights.len()];
                    t[j] = Q64::from_integer(1);
                    LCandidate {
                        name: format!("L_{j}"),
                        t,
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        let data = ClosedFormData {
            e_k,
            weights: weights.to_vec(),
            vals: vals.clone(),
            parts: parts.clone(),
            l_candidates,
        };
        if evaluate(&data).passed {
            out.push(parts);
        }
    }
    out
}
