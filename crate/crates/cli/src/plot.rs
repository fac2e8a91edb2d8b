use std::path::{Path, PathBuf};

use plotters::prelude::*;

use qfft::bench::BenchRecord;
use qfft::Error;

type Series = (String, RGBColor, Vec<(f64, f64)>);

fn line_plot(path: &Path, title: &str, y_label: &str, series: &[Series]) -> Result<(), Box<dyn std::error::Error>> {
    let points = series.iter().flat_map(|s| s.2.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Ok(());
    }
    let pad = (y1 - y0).abs().max(y1.abs() * 1e-3) * 0.1;
    let root = SVGBackend::new(path, (800, 500)).into_drawing_area();
    root.fill(&WHITE)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(title, ("sans-serif", 20))
        .margin(15)
        .x_label_area_size(40)
        .y_label_area_size(80)
        .build_cartesian_2d(x0..x1, (y0 - pad)..(y1 + pad))?;
    chart.configure_mesh().x_desc("D").y_desc(y_label).draw()?;
    for (name, color, pts) in series {
        let color = *color;
        chart
            .draw_series(LineSeries::new(pts.iter().copied(), &color))?
            .label(name.as_str())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], color));
    }
    chart.configure_series_labels().background_style(WHITE.mix(0.8)).border_style(BLACK).draw()?;
    root.present()?;
    Ok(())
}

fn series_of(records: &[BenchRecord], backend: &str, f: impl Fn(&BenchRecord) -> f64) -> Vec<(f64, f64)> {
    records.iter().filter(|r| r.backend == backend).map(|r| (r.dim as f64, f(r))).collect()
}

/// Times, `T/D²` of the direct transform and `T_f/(D ln D)` of the fast one.
pub fn sweep_plots(dir: &Path, suite: &str, records: &[BenchRecord]) -> qfft::Result<Vec<PathBuf>> {
    let fast = records.iter().find(|r| r.backend != "direct").map(|r| r.backend.clone()).unwrap_or_default();
    let plots = [
        (
            "times",
            "wall time [s]",
            vec![
                ("direct".to_string(), RED, series_of(records, "direct", |r| r.time_seconds)),
                (fast.clone(), BLUE, series_of(records, &fast, |r| r.time_seconds)),
            ],
        ),
        ("direct_ratio", "T(D) / D^2", vec![("direct".to_string(), RED, series_of(records, "direct", |r| r.ratio_t_over_d2))]),
        ("fast_ratio", "T_f(D) / (D ln D)", vec![(fast.clone(), BLUE, series_of(records, &fast, |r| r.ratio_tf_over_dlogd))]),
    ];
    let mut written = Vec::new();
    for (tag, y_label, series) in plots {
        let path = dir.join(format!("bench_{suite}_{tag}.svg"));
        line_plot(&path, &format!("{suite} sweep: {y_label}"), y_label, &series)
            .map_err(|e| Error::Format(format!("plot {}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
