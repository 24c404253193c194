//! Minimal SVG step plot of a signature profile. Purely presentational:
//! breakpoint positions are interval-refined approximations; all exact
//! data lives in the JSON output.

use witt_core::profile::SignatureProfile;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn x_px(theta: f64) -> f64 {
    MARGIN + theta / 0.5 * (WIDTH - 2.0 * MARGIN)
}

pub fn render(profile: &SignatureProfile) -> String {
    // interval values and breakpoint angles
    let mut values = vec![profile.sigma_at_zero];
    let mut thetas = vec![0.0f64];
    for (i, bp) in profile.breakpoints.iter().enumerate() {
        thetas.push(bp.angle.approx_theta_f64());
        values.push(profile.value_after(i));
    }
    thetas.push(0.5);

    let vmax = values
        .iter()
        .chain(profile.breakpoints.iter().map(|b| &b.sigma_point))
        .map(|v| v.abs())
        .max()
        .unwrap_or(0)
        .max(1);
    let y_px = |v: f64| -> f64 {
        let span = 2.0 * vmax as f64;
        HEIGHT - MARGIN - (v + vmax as f64) / span * (HEIGHT - 2.0 * MARGIN)
    };

    let mut body = String::new();
    // axes
    body.push_str(&format!(
        "<line x1='{:.2}' y1='{:.2}' x2='{:.2}' y2='{:.2}' stroke='#888'/>\n",
        x_px(0.0),
        y_px(0.0),
        x_px(0.5),
        y_px(0.0)
    ));
    body.push_str(&format!(
        "<line x1='{:.2}' y1='{:.2}' x2='{:.2}' y2='{:.2}' stroke='#888'/>\n",
        x_px(0.0),
        MARGIN,
        x_px(0.0),
        HEIGHT - MARGIN
    ));
    for (label, theta) in [("0", 0.0), ("1/4", 0.25), ("1/2", 0.5)] {
        body.push_str(&format!(
            "<text x='{:.2}' y='{:.2}' font-size='12' text-anchor='middle'>{}</text>\n",
            x_px(theta),
            HEIGHT - MARGIN + 16.0,
            label
        ));
    }
    for v in -vmax..=vmax {
        body.push_str(&format!(
            "<text x='{:.2}' y='{:.2}' font-size='12' text-anchor='end'>{}</text>\n",
            x_px(0.0) - 6.0,
            y_px(v as f64) + 4.0,
            v
        ));
    }
    // horizontal steps
    for (i, &v) in values.iter().enumerate() {
        body.push_str(&format!(
            "<line x1='{:.2}' y1='{:.2}' x2='{:.2}' y2='{:.2}' stroke='#1a56a0' stroke-width='2'/>\n",
            x_px(thetas[i]),
            y_px(v as f64),
            x_px(thetas[i + 1]),
            y_px(v as f64)
        ));
    }
    // discontinuity markers: open circles at the one-sided limits, a
    // filled circle at the averaged point value
    for (i, bp) in profile.breakpoints.iter().enumerate() {
        let theta = thetas[i + 1];
        body.push_str(&format!(
            "<line x1='{:.2}' y1='{:.2}' x2='{:.2}' y2='{:.2}' stroke='#1a56a0' stroke-dasharray='3 3'/>\n",
            x_px(theta),
            y_px(values[i] as f64),
            x_px(theta),
            y_px(values[i + 1] as f64)
        ));
        for v in [values[i], values[i + 1]] {
            body.push_str(&format!(
                "<circle cx='{:.2}' cy='{:.2}' r='4' fill='white' stroke='#1a56a0'/>\n",
                x_px(theta),
                y_px(v as f64)
            ));
        }
        body.push_str(&format!(
            "<circle cx='{:.2}' cy='{:.2}' r='4' fill='#1a56a0'/>\n",
            x_px(theta),
            y_px(bp.sigma_point as f64)
        ));
    }

    format!(
        "<svg xmlns='http://www.w3.org/2000/svg' width='{WIDTH}' height='{HEIGHT}' viewBox='0 0 {WIDTH} {HEIGHT}'>\n<rect width='100%' height='100%' fill='white'/>\n{body}</svg>\n"
    )
}
