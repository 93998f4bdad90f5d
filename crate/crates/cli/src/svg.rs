//! Minimal SVG 1.1 scatter plots of complex points.
//!
//! Fixed viewport covering the square [-2.2, 2.2] x [-2.2, 2.2] at
//! 150 pixels per unit (660 x 660), with light axes through the origin.
//! Points land as 0.5 px radius dots; non-finite or out-of-view points
//! are skipped.

const SCALE: f64 = 150.0;
const HALF: f64 = 2.2;
const SIDE: f64 = 2.0 * HALF * SCALE;

fn to_px(x: f64, y: f64) -> (f64, f64) {
    ((x + HALF) * SCALE, (HALF - y) * SCALE)
}

/// Render `points` (re, im) to an SVG document string.
pub fn scatter(points: &[(f64, f64)]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{SIDE}\" height=\"{SIDE}\" viewBox=\"0 0 {SIDE} {SIDE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{SIDE}\" height=\"{SIDE}\" fill=\"white\"/>\n"
    ));
    let (ox, oy) = to_px(0.0, 0.0);
    out.push_str(&format!(
        "  <line x1=\"0\" y1=\"{oy}\" x2=\"{SIDE}\" y2=\"{oy}\" \
         stroke=\"#cccccc\" stroke-width=\"1\"/>\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{ox}\" y1=\"0\" x2=\"{ox}\" y2=\"{SIDE}\" \
         stroke=\"#cccccc\" stroke-width=\"1\"/>\n"
    ));
    for &(re, im) in points {
        if !re.is_finite() || !im.is_finite() {
            continue;
        }
        if re.abs() > HALF || im.abs() > HALF {
            continue;
        }
        let (cx, cy) = to_px(re, im);
        out.push_str(&format!(
            "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"0.5\" fill=\"black\"/>\n"
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_in_view_points_and_skips_the_rest() {
        let svg = scatter(&[
            (0.0, 0.0),
            (1.0, -1.0),
            (5.0, 0.0),
            (f64::NAN, 0.0),
            (0.0, f64::INFINITY),
        ]);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("cx=\"330.00\" cy=\"330.00\""));
        assert!(svg.contains("cx=\"480.00\" cy=\"480.00\""));
        assert!(svg.starts_with("<svg xmlns"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn viewport_is_fixed() {
        let svg = scatter(&[]);
        assert!(svg.contains("width=\"660\" height=\"660\""));
        assert!(svg.contains("viewBox=\"0 0 660 660\""));
    }
}
