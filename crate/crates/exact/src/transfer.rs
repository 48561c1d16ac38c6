use std::collections::HashMap;

use num::BigUint;

use chroma_lattice::{Graph, GraphKind, PartialColoring};

use crate::{ExactError, Result};

/// Exact proper-coloring count of a 2-dimensional box by row-by-row dynamic
/// programming over proper row colorings with vertical compatibility.
///
/// Rows are taken along the longer axis so the state space is `q^min-side`;
/// `max_states` caps that state space.
pub fn count_transfer_matrix(
    g: &Graph,
    q: u8,
    tau: &PartialColoring,
    max_states: usize,
) -> Result<BigUint> {
    if g.kind() != GraphKind::Box {
        return Err(ExactError::NotABox);
    }
    tau.check_range()?;
    let coords = g.coords().ok_or(ExactError::NotABox)?;
    let d = coords[0].len();
    if d != 2 {
        return Err(ExactError::NotABox);
    }
    let sx = coords.iter().map(|c| c[0]).max().unwrap() as usize + 1;
    let sy = coords.iter().map(|c| c[1]).max().unwrap() as usize + 1;
    // Row r runs across the short axis.
    let transposed = sx > sy;
    let (width, height) = if transposed { (sy, sx) } else { (sx, sy) };
    let cell = |r: usize, c: usize| -> [i64; 2] {
        if transposed {
            [r as i64, c as i64]
        } else {
            [c as i64, r as i64]
        }
    };
    let all = if q >= 64 { u64::MAX } else { (1u64 << q) - 1 };
    if (q as u128).pow(width as u32) > max_states as u128 {
        return Err(ExactError::CapExceeded(format!(
            "q^{width} transfer states exceed {max_states}"
        )));
    }
    let allowed: Vec<Vec<u64>> = (0..height)
        .map(|r| {
            (0..width)
                .map(|c| {
                    let v = g.vertex_at(&cell(r, c)).expect("box cell");
                    match tau.get(v) {
                        Some(col) => 1u64 << (col - 1),
                        None => all,
                    }
                })
                .collect()
        })
        .collect();

    // Proper colorings of one row, respecting the allowed masks and an
    // optional previous row (vertical compatibility).
    fn row_states(allowed: &[u64], prev: Option<&[u8]>, mut visit: impl FnMut(&[u8])) {
        fn rec(
            allowed: &[u64],
            prev: Option<&[u8]>,
            row: &mut Vec<u8>,
            visit: &mut impl FnMut(&[u8]),
        ) {
            let k = row.len();
            if k == allowed.len() {
                visit(row);
                return;
            }
            let mut m = allowed[k];
            if k > 0 {
                m &= !(1u64 << (row[k - 1] - 1));
            }
            if let Some(p) = prev {
                m &= !(1u64 << (p[k] - 1));
            }
            while m != 0 {
                let c = m.trailing_zeros() as u8 + 1;
                m &= m - 1;
                row.push(c);
                rec(allowed, prev, row, visit);
                row.pop();
            }
        }
        rec(allowed, prev, &mut Vec::with_capacity(allowed.len()), &mut visit);
    }

    let code = |row: &[u8]| -> u128 {
        row.iter().fold(0u128, |acc, &c| acc * q as u128 + c as u128)
    };

    let mut layer: HashMap<u128, (Vec<u8>, BigUint)> = HashMap::new();
    row_states(&allowed[0], None, |row| {
        layer.insert(code(row), (row.to_vec(), BigUint::from(1u32)));
    });
    for r in 1..height {
        let mut next: HashMap<u128, (Vec<u8>, BigUint)> = HashMap::new();
        for (prev_row, w) in layer.values() {
            row_states(&allowed[r], Some(prev_row), |row| {
                let e = next
                    .entry(code(row))
                    .or_insert_with(|| (row.to_vec(), BigUint::from(0u32)));
                e.1 += w;
            });
        }
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    Ok(layer.values().map(|(_, w)| w.clone()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{count_proper_extensions, Limits};
    use chroma_lattice::Graph;

    fn empty(q: u8, g: &Graph) -> PartialColoring {
        PartialColoring::empty(q, g.n())
    }

    #[test]
    fn small_boxes_match_known_values() {
        // 2x2 box is the 4-cycle: 18 proper 3-colorings.
        let g = Graph::grid_box(&[2, 2]).unwrap();
        assert_eq!(
            count_transfer_matrix(&g, 3, &empty(3, &g), 1 << 20).unwrap(),
            BigUint::from(18u32)
        );
        // 1xn path: q(q-1)^(n-1).
        let g = Graph::grid_box(&[1, 6]).unwrap();
        assert_eq!(
            count_transfer_matrix(&g, 4, &empty(4, &g), 1 << 20).unwrap(),
            BigUint::from(4u32 * 3u32.pow(5))
        );
    }

    #[test]
    fn matches_brute_force_with_boundary() {
        let g = Graph::grid_box(&[3, 4]).unwrap();
        for q in [2u8, 3, 4] {
            let mut tau = PartialColoring::empty(q, g.n());
            tau.set(g.vertex_at(&[0, 0]).unwrap(), 1);
            tau.set(g.vertex_at(&[2, 3]).unwrap(), q);
            let tm = count_transfer_matrix(&g, q, &tau, 1 << 20).unwrap();
            let bf = count_proper_extensions(&g, q, &tau, Limits::default()).unwrap();
            assert_eq!(tm, BigUint::from(bf));
        }
    }

    #[test]
    fn width_cap() {
        let g = Graph::grid_box(&[8, 8]).unwrap();
        assert!(matches!(
            count_transfer_matrix(&g, 9, &empty(9, &g), 1000),
            Err(ExactError::CapExceeded(_))
        ));
    }

    #[test]
    fn non_box_rejected() {
        let g = Graph::ball(2, 2).unwrap();
        assert!(matches!(
            count_transfer_matrix(&g, 3, &empty(3, &g), 1 << 20),
            Err(ExactError::NotABox)
        ));
    }
}
