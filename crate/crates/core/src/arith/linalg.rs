use super::Rational;
use num_traits::Zero;

/// One solution of M x = rhs over Q (free variables set to zero), or None if inconsistent.
pub fn solve(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        rhs.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        rhs[r] *= &inv;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..cols {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
                let delta = &f * &rhs[r];
                rhs[i] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn small_systems() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        assert_eq!(solve(m, vec![rat(3), rat(4)]), Some(vec![rat(1), rat(1)]));
        let singular = vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]];
        assert_eq!(solve(singular.clone(), vec![rat(1), rat(3)]), None);
        assert_eq!(solve(singular, vec![rat(1), rat(2)]), Some(vec![rat(1), rat(0)]));
    }
}
