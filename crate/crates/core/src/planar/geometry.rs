use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

/// Exact point in the plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Q::from_integer(x.into()), Q::from_integer(y.into()))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Q) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        Point::mean(&[self, o])
    }

    /// Average of a nonempty point list, reduced once per coordinate.
    pub fn mean(pts: &[&Point]) -> Point {
        let xs: Vec<&Q> = pts.iter().map(|p| &p.x).collect();
        let ys: Vec<&Q> = pts.iter().map(|p| &p.y).collect();
        Point::new(mean(&xs), mean(&ys))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.x, self.y)
    }
}

pub fn mean(values: &[&Q]) -> Q {
    let mut num = values[0].numer().clone();
    let mut den = values[0].denom().clone();
    for v in &values[1..] {
        if v.denom() == &den {
            num += v.numer();
        } else {
            num = num * v.denom() + v.numer() * &den;
            den *= v.denom();
        }
    }
    Q::new(num, den * BigInt::from(values.len()))
}

pub fn cross(u: &Point, v: &Point) -> Q {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &Point, v: &Point) -> Q {
    &u.x * &v.x + &u.y * &v.y
}

/// Sign of the turn a -> b -> c: `Greater` for counterclockwise.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Q::zero())
}

pub fn dist2(a: &Point, b: &Point) -> Q {
    let d = b.sub(a);
    dot(&d, &d)
}

/// Twice the signed area of a polygon.
pub fn signed_area2(pts: &[&Point]) -> Q {
    let n = pts.len();
    let mut s = Q::zero();
    for i in 0..n {
        s += cross(pts[i], pts[(i + 1) % n]);
    }
    s
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && dot(&a.sub(p), &b.sub(p)) <= Q::zero()
}

/// `p` lies strictly between `a` and `b` on the segment.
pub fn strictly_inside_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && dot(&a.sub(p), &b.sub(p)) < Q::zero()
}

/// Closed segments `ab` and `cd` share a point.
pub fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Intersection of the lines through `ab` and `cd`, if they are not parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Option<Point> {
    let r = b.sub(a);
    let s = d.sub(c);
    let den = cross(&r, &s);
    if den.is_zero() {
        return None;
    }
    let t = cross(&c.sub(a), &s) / den;
    Some(a.add(&r.scale(&t)))
}

/// Where `p` sits relative to the closed triangle `abc` (counterclockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleHit {
    Outside,
    Interior,
    /// On the open edge opposite to corner `(i + 2) % 3`, i.e. between corners `i` and `i + 1`.
    Edge(usize),
    Corner(usize),
}

pub fn locate_in_triangle(p: &Point, t: [&Point; 3]) -> TriangleHit {
    let o = [
        orient(t[0], t[1], p),
        orient(t[1], t[2], p),
        orient(t[2], t[0], p),
    ];
    if o.contains(&Ordering::Less) {
        return TriangleHit::Outside;
    }
    for (i, q) in t.iter().enumerate() {
        if *q == p {
            return TriangleHit::Corner(i);
        }
    }
    match o.iter().position(|&s| s == Ordering::Equal) {
        None => TriangleHit::Interior,
        Some(i) => TriangleHit::Edge(i),
    }
}

/// Polygon simplicity: at least three distinct vertices, no edge meeting a
/// non-adjacent edge, and no adjacent pair folding back on itself.
pub fn is_simple_polygon(pts: &[Point]) -> bool {
    let n = pts.len();
    if n < 3 {
        return false;
    }
    let mut sorted: Vec<&Point> = pts.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    for i in 0..n {
        let (a, b, c) = (&pts[i], &pts[(i + 1) % n], &pts[(i + 2) % n]);
        if orient(a, b, c) == Ordering::Equal && dot(&a.sub(b), &c.sub(b)) > Q::zero() {
            return false;
        }
    }
    if n == 3 {
        return orient(&pts[0], &pts[1], &pts[2]) != Ordering::Equal;
    }
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_meet(&pts[i], &pts[(i + 1) % n], &pts[j], &pts[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// Squared minimum distance between distinct polygon vertices.
pub fn min_vertex_dist2(pts: &[Point]) -> Option<Q> {
    let mut best: Option<Q> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist2(&pts[i], &pts[j]);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best
}

/// Squared diameter of a point set.
pub fn diameter2(pts: &[Point]) -> Q {
    let mut best = Q::zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = dist2(&pts[i], &pts[j]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Parse `n`, `n/d`, or a decimal such as `-1.25`, exactly.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac)
            .parse()
            .ok()?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let q = Q::new(whole, den);
        return Some(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Q::from_integer(n))
}

/// Largest power of two `h` (any integer exponent) with `h^2 <= bound2`.
pub fn dyadic_floor_le(bound2: &Q) -> Q {
    let mut h = Q::one();
    let two = Q::from_integer(2.into());
    if (&h * &h) <= *bound2 {
        while (&h * &two) * (&h * &two) <= *bound2 {
            h = &h * &two;
        }
    } else {
        while (&h * &h) > *bound2 {
            h = &h / &two;
        }
    }
    h
}

/// Smallest non-negative integer `m` with `m^2 > q`.
pub fn int_exceeding_sqrt(q: &Q) -> Q {
    let mut m = q.abs().to_f64().unwrap_or(0.0).sqrt().floor().max(0.0) as i64;
    m = (m - 2).max(0);
    loop {
        let mq = Q::from_integer(m.into());
        if &mq * &mq > *q {
            return mq;
        }
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4"), Some(Q::new(3.into(), 4.into())));
        assert_eq!(parse_rational("-1.25"), Some(Q::new((-5).into(), 4.into())));
        assert_eq!(parse_rational("-0.5"), Some(Q::new((-1).into(), 2.into())));
        assert_eq!(parse_rational(".5"), Some(Q::new(1.into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(Q::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1.x"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn triangle_location() {
        let t = [&p(0, 0), &p(4, 0), &p(0, 4)];
        assert_eq!(locate_in_triangle(&p(1, 1), t), TriangleHit::Interior);
        assert_eq!(locate_in_triangle(&p(2, 0), t), TriangleHit::Edge(0));
        assert_eq!(locate_in_triangle(&p(2, 2), t), TriangleHit::Edge(1));
        assert_eq!(locate_in_triangle(&p(0, 2), t), TriangleHit::Edge(2));
        assert_eq!(locate_in_triangle(&p(4, 0), t), TriangleHit::Corner(1));
        assert_eq!(locate_in_triangle(&p(3, 3), t), TriangleHit::Outside);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple_polygon(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2)]));
        assert!(!is_simple_polygon(&[p(0, 0), p(2, 2), p(2, 0), p(0, 2)]));
        assert!(!is_simple_polygon(&[p(0, 0), p(2, 0), p(1, 0)]));
        assert!(!is_simple_polygon(&[p(0, 0), p(2, 0), p(2, 2), p(2, 0), p(0, 2)]));
        assert!(!is_simple_polygon(&[p(0, 0), p(4, 0), p(4, 4), p(2, 0), p(0, 4)]));
    }

    #[test]
    fn intersection_is_exact() {
        let x = line_intersection(&p(0, 0), &p(3, 1), &p(0, 1), &p(1, 0)).unwrap();
        assert_eq!(x, Point::new(Q::new(3.into(), 4.into()), Q::new(1.into(), 4.into())));
    }

    #[test]
    fn dyadic_spacing() {
        // d0 = 3/2 gives h <= 1/2 exactly.
        let d0 = Q::new(3.into(), 2.into());
        let bound = &d0 * &d0 / Q::from_integer(9.into());
        assert_eq!(dyadic_floor_le(&bound), Q::new(1.into(), 2.into()));
        assert_eq!(dyadic_floor_le(&Q::from_integer(16.into())), Q::from_integer(4.into()));
        assert_eq!(int_exceeding_sqrt(&Q::from_integer(64.into())), Q::from_integer(9.into()));
        assert_eq!(int_exceeding_sqrt(&Q::new(1.into(), 2.into())), Q::one());
    }
}
