//! Complete fans in the plane and the toric surfaces they define.

use std::cmp::Ordering;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Ray = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("a fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    #[error("{rays} rays but {labels} labels")]
    LabelMismatch { rays: usize, labels: usize },
    #[error("ray {index} {ray:?} is not primitive")]
    NonPrimitive { index: usize, ray: Ray },
    #[error("rays {index} and {next} are not in counterclockwise order")]
    OrderViolation { index: usize, next: usize },
    #[error("rays {index} and {next} are opposite, so the fan is not complete")]
    Incomplete { index: usize, next: usize },
    #[error("ray {ray:?} occurs twice")]
    DuplicateRay { ray: Ray },
    #[error("the rays wind {0} times around the origin")]
    Winding(usize),
    #[error("blow-ups need a smooth fan")]
    NotSmooth,
    #[error("position {position} is out of range for {rays} rays")]
    PositionOutOfRange { position: usize, rays: usize },
    #[error("k = {0} is outside 0..=8")]
    KOutOfRange(usize),
}

/// Rays in counterclockwise cyclic order with a name for each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan2D {
    pub rays: Vec<Ray>,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub ray_count: usize,
    pub smooth: bool,
    /// `None` unless the fan is smooth.
    pub self_intersections: Option<Vec<i64>>,
    #[serde(rename = "K_squared")]
    pub k_squared: Option<i64>,
    pub euler: usize,
}

fn cross(a: Ray, b: Ray) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Ray, b: Ray) -> i64 {
    a[0] * b[0] + a[1] * b[1]
}

/// Upper half-plane (angle in [0, π)) first.
fn half(v: Ray) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

/// Compares rays by their angle in `[0, 2π)`, measured from the positive x-axis.
pub fn angle_cmp(a: Ray, b: Ray) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

impl Fan2D {
    pub fn new(rays: Vec<Ray>, labels: Vec<String>) -> Self {
        Fan2D { rays, labels }
    }

    /// Labels `v1, v2, …` in order.
    pub fn unlabeled(rays: Vec<Ray>) -> Self {
        let labels = (1..=rays.len()).map(|i| format!("v{i}")).collect();
        Fan2D { rays, labels }
    }

    pub fn p2() -> Self {
        Self::new(vec![[1, 0], [0, 1], [-1, -1]], ["D1", "D2", "D3"].map(String::from).to_vec())
    }

    pub fn p1xp1() -> Self {
        Self::unlabeled(vec![[1, 0], [0, 1], [-1, 0], [0, -1]])
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    fn next(&self, i: usize) -> usize {
        (i + 1) % self.rays.len()
    }

    fn prev(&self, i: usize) -> usize {
        (i + self.rays.len() - 1) % self.rays.len()
    }

    /// Structural checks: primitivity, counterclockwise order, completeness.
    pub fn check(&self) -> Result<(), ToricError> {
        let n = self.rays.len();
        if n < 3 {
            return Err(ToricError::TooFewRays(n));
        }
        if self.labels.len() != n {
            return Err(ToricError::LabelMismatch { rays: n, labels: self.labels.len() });
        }
        for (index, &ray) in self.rays.iter().enumerate() {
            if ray[0].gcd(&ray[1]) != 1 {
                return Err(ToricError::NonPrimitive { index, ray });
            }
        }
        for i in 0..n {
            let j = self.next(i);
            let (a, b) = (self.rays[i], self.rays[j]);
            match cross(a, b).cmp(&0) {
                Ordering::Greater => {}
                Ordering::Less => return Err(ToricError::OrderViolation { index: i, next: j }),
                Ordering::Equal if dot(a, b) < 0 => return Err(ToricError::Incomplete { index: i, next: j }),
                Ordering::Equal => return Err(ToricError::DuplicateRay { ray: a }),
            }
        }
        // every step turns by less than π, so the number of wrap-arounds is the winding number
        let winding = (0..n)
            .filter(|&i| angle_cmp(self.rays[self.next(i)], self.rays[i]) == Ordering::Less)
            .count();
        if winding != 1 {
            return Err(ToricError::Winding(winding));
        }
        Ok(())
    }

    /// True when every consecutive pair spans Z² with positive orientation.
    /// Assumes [`check`](Self::check) passed.
    pub fn is_smooth(&self) -> bool {
        (0..self.rays.len()).all(|i| cross(self.rays[i], self.rays[self.next(i)]) == 1)
    }

    /// `bᵢ` with `v_{i-1} + v_{i+1} = -bᵢ vᵢ`, valid for smooth fans.
    fn self_intersections(&self) -> Vec<i64> {
        (0..self.rays.len())
            .map(|i| -cross(self.rays[self.prev(i)], self.rays[self.next(i)]))
            .collect()
    }
}

pub fn validate_fan(f: &Fan2D) -> Result<ToricReport, ToricError> {
    f.check()?;
    let n = f.len();
    let smooth = f.is_smooth();
    let (self_intersections, k_squared) = if smooth {
        let b = f.self_intersections();
        let k2 = b.iter().sum::<i64>() + 2 * n as i64;
        (Some(b), Some(k2))
    } else {
        (None, None)
    };
    Ok(ToricReport { ray_count: n, smooth, self_intersections, k_squared, euler: n })
}

/// Star subdivision of the cone between rays `position` and `position + 1`.
pub fn blow_up(f: &Fan2D, position: usize, new_label: &str) -> Result<Fan2D, ToricError> {
    f.check()?;
    if !f.is_smooth() {
        return Err(ToricError::NotSmooth);
    }
    let n = f.len();
    if position >= n {
        return Err(ToricError::PositionOutOfRange { position, rays: n });
    }
    let (a, b) = (f.rays[position], f.rays[f.next(position)]);
    let ray = [a[0] + b[0], a[1] + b[1]];
    if f.rays.contains(&ray) {
        return Err(ToricError::DuplicateRay { ray });
    }
    let mut out = f.clone();
    out.rays.insert(position + 1, ray);
    out.labels.insert(position + 1, new_label.to_string());
    Ok(out)
}

/// Position `i` such that `fine == blow_up(coarse, i, _)`, up to labels.
pub fn blow_up_position(coarse: &Fan2D, fine: &Fan2D) -> Option<usize> {
    (0..coarse.len()).find(|&i| blow_up(coarse, i, "").is_ok_and(|g| g.rays == fine.rays))
}

const DP_RAYS: [(&str, Ray); 11] = [
    ("D1", [1, 0]),
    ("D2", [0, 1]),
    ("D3", [-1, -1]),
    ("E1", [-1, 0]),
    ("E2", [0, -1]),
    ("E3", [1, 1]),
    ("E4", [-1, 1]),
    ("E5", [1, -1]),
    ("E6", [1, 2]),
    ("E7", [-1, 2]),
    ("E8", [2, -1]),
];

/// The toric central fiber of the degeneration of a degree `9 - k` del Pezzo
/// surface: the P² fan with the exceptional rays `E1 … Ek` inserted.
pub fn dp_degeneration_fan(k: usize) -> Result<Fan2D, ToricError> {
    if k > 8 {
        return Err(ToricError::KOutOfRange(k));
    }
    let mut chosen: Vec<(&str, Ray)> = DP_RAYS[..3 + k].to_vec();
    chosen.sort_by(|x, y| angle_cmp(x.1, y.1));
    Ok(Fan2D {
        rays: chosen.iter().map(|c| c.1).collect(),
        labels: chosen.iter().map(|c| c.0.to_string()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projective_plane() {
        let r = validate_fan(&Fan2D::p2()).unwrap();
        assert!(r.smooth);
        assert_eq!(r.self_intersections, Some(vec![1, 1, 1]));
        assert_eq!(r.k_squared, Some(9));
        assert_eq!(r.euler, 3);
    }

    #[test]
    fn quadric() {
        let r = validate_fan(&Fan2D::p1xp1()).unwrap();
        assert_eq!(r.self_intersections, Some(vec![0, 0, 0, 0]));
        assert_eq!(r.k_squared, Some(8));
    }

    #[test]
    fn degree_one_fan() {
        let f = dp_degeneration_fan(8).unwrap();
        let want: Vec<Ray> =
            vec![[1, 0], [1, 1], [1, 2], [0, 1], [-1, 2], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1], [2, -1]];
        assert_eq!(f.rays, want);
        let r = validate_fan(&f).unwrap();
        assert!(r.smooth);
        assert_eq!((r.k_squared, r.euler), (Some(1), 11));
    }

    #[test]
    fn structural_errors() {
        let bad = Fan2D::unlabeled(vec![[2, 0], [0, 1], [-1, -1]]);
        assert!(matches!(bad.check(), Err(ToricError::NonPrimitive { index: 0, .. })));
        let cw = Fan2D::unlabeled(vec![[1, 0], [-1, -1], [0, 1]]);
        assert!(matches!(cw.check(), Err(ToricError::OrderViolation { .. })));
        let half = Fan2D::unlabeled(vec![[1, 0], [0, 1], [-1, 0]]);
        assert!(matches!(half.check(), Err(ToricError::Incomplete { .. })));
        let twice = Fan2D::unlabeled(vec![[1, 0], [-1, 1], [0, -1], [1, 1], [-1, 0], [1, -1]]);
        assert_eq!(twice.check(), Err(ToricError::Winding(2)));
        assert_eq!(Fan2D::unlabeled(vec![[1, 0], [0, 1]]).check(), Err(ToricError::TooFewRays(2)));
        assert!(matches!(dp_degeneration_fan(9), Err(ToricError::KOutOfRange(9))));
    }

    #[test]
    fn singular_fan_has_no_intersection_numbers() {
        // weighted projective plane P(1,1,2)
        let f = Fan2D::unlabeled(vec![[1, 0], [0, 1], [-1, -2]]);
        let r = validate_fan(&f).unwrap();
        assert!(!r.smooth);
        assert_eq!(r.k_squared, None);
    }

    #[test]
    fn blow_ups_of_the_plane() {
        let f = blow_up(&Fan2D::p2(), 0, "E3").unwrap();
        assert_eq!(f.rays[1], [1, 1]);
        assert_eq!(validate_fan(&f).unwrap().k_squared, Some(8));
        let wrap = blow_up(&Fan2D::p2(), 2, "E2").unwrap();
        assert_eq!(wrap.rays.last(), Some(&[0, -1]));
        let hex = blow_up(&blow_up(&f, 2, "E1").unwrap(), 4, "E2").unwrap();
        let r = validate_fan(&hex).unwrap();
        assert_eq!((r.ray_count, r.k_squared), (6, Some(6)));
        assert_eq!(hex.rays, dp_degeneration_fan(3).unwrap().rays);
        assert!(matches!(blow_up(&Fan2D::p2(), 3, "x"), Err(ToricError::PositionOutOfRange { .. })));
    }

    #[test]
    fn degeneration_fans_form_a_blow_up_chain() {
        for k in 0..=8 {
            let f = dp_degeneration_fan(k).unwrap();
            let r = validate_fan(&f).unwrap();
            assert!(r.smooth);
            assert_eq!(r.k_squared, Some(9 - k as i64));
            assert_eq!(r.k_squared.unwrap() + r.euler as i64, 12);
            if k > 0 {
                assert!(blow_up_position(&dp_degeneration_fan(k - 1).unwrap(), &f).is_some(), "k = {k}");
            }
        }
    }

    #[test]
    fn json_format() {
        let f: Fan2D = serde_json::from_str(r#"{"rays": [[1,0],[0,1],[-1,-1]], "labels": ["a","b","c"]}"#).unwrap();
        assert_eq!(f.rays, Fan2D::p2().rays);
        let r = serde_json::to_value(validate_fan(&f).unwrap()).unwrap();
        assert_eq!(r["K_squared"], 9);
    }

    proptest! {
        #[test]
        fn blow_up_lowers_k_squared(choices in proptest::collection::vec(0usize..64, 0..10), last in 0usize..64) {
            let mut f = Fan2D::p2();
            for c in choices {
                f = blow_up(&f, c % f.len(), "e").unwrap();
            }
            let before = validate_fan(&f).unwrap();
            let g = blow_up(&f, last % f.len(), "e").unwrap();
            let after = validate_fan(&g).unwrap();
            prop_assert!(after.smooth);
            prop_assert_eq!(after.k_squared.unwrap(), before.k_squared.unwrap() - 1);
            prop_assert_eq!(after.euler, before.euler + 1);
            prop_assert_eq!(after.k_squared.unwrap() + after.euler as i64, 12);
        }
    }
}
