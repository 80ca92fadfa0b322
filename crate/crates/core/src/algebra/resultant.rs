use super::{determinant, BiPoly};
use crate::error::{Error, Result};

fn degree(p: &[BiPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Sylvester matrix of two polynomials in `λ` with coefficients in `Q[x, y]`,
/// coefficients given lowest degree first.
///
/// The first `deg g` rows hold shifted copies of `f`, the remaining `deg f`
/// rows shifted copies of `g`, highest coefficient leftmost.
pub fn sylvester_matrix(f: &[BiPoly], g: &[BiPoly]) -> Result<Vec<Vec<BiPoly>>> {
    let (Some(m), Some(n)) = (degree(f), degree(g)) else {
        return Err(Error::validation("resultant of a zero polynomial"));
    };
    if m + n == 0 {
        return Err(Error::validation("resultant of two constants"));
    }
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (src, deg, copies) in [(f, m, n), (g, n, m)] {
        for shift in 0..copies {
            let mut row = vec![BiPoly::zero(); size];
            for k in 0..=deg {
                row[shift + deg - k] = src[k].clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// `Res_λ(f, g)`: the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &[BiPoly], g: &[BiPoly]) -> Result<BiPoly> {
    let (Some(m), Some(n)) = (degree(f), degree(g)) else {
        return Err(Error::validation("resultant of a zero polynomial"));
    };
    if m == 0 || n == 0 {
        // Res(c, g) = c^deg g
        let (c, k) = if m == 0 { (&f[0], n) } else { (&g[0], m) };
        if m == 0 && n == 0 {
            return Err(Error::validation("resultant of two constants"));
        }
        return Ok(c.pow(k as u32));
    }
    let rows = sylvester_matrix(f, g)?;
    let r = determinant(&rows)?;
    Ok(if r.is_zero() { BiPoly::zero() } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn c(v: i64) -> BiPoly {
        BiPoly::constant(int(v))
    }

    #[test]
    fn cusp_from_square_and_cube() {
        // Res(λ^2 - x, λ^3 - y) = y^2 - x^3
        let f = vec![-&BiPoly::x(), c(0), c(1)];
        let g = vec![-&BiPoly::y(), c(0), c(0), c(1)];
        let r = sylvester_resultant(&f, &g).unwrap();
        assert_eq!(r, &BiPoly::y().pow(2) - &BiPoly::x().pow(3));
    }

    #[test]
    fn linear_and_double() {
        let f = vec![-&BiPoly::x(), c(1)];
        let g = vec![-&BiPoly::y(), c(1)];
        // Res(λ - x, λ - y) = g(x) = x - y
        assert_eq!(sylvester_resultant(&f, &g).unwrap(), &BiPoly::x() - &BiPoly::y());

        let f2 = vec![-&BiPoly::x(), c(0), c(1)];
        let g2 = vec![-&BiPoly::y(), c(0), c(1)];
        let d = &BiPoly::y() - &BiPoly::x();
        assert_eq!(sylvester_resultant(&f2, &g2).unwrap(), d.pow(2));
    }

    #[test]
    fn zero_and_constant_inputs() {
        assert!(sylvester_resultant(&[], &[c(1), c(1)]).is_err());
        assert!(sylvester_resultant(&[c(2)], &[c(3)]).is_err());
        assert_eq!(sylvester_resultant(&[c(2)], &[c(0), c(0), c(1)]).unwrap(), c(4));
    }
}
