use std::path::{Path, PathBuf};

use super::report::RunReport;
use super::svg::{Chart, Style};
use crate::correlogram::Correlogram;
use crate::error::{Error, Result};

/// Writes one CSV and one SVG per figure into `dir` and returns their paths
/// in figure order.
///
/// Figures: the raw series, the stationary training series, a normal Q-Q
/// plot, ACF, PACF, then a forecast and a prediction figure for each
/// candidate model, and finally the residuals of the selected model.
pub fn emit_plot_data(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    let data = &report.plot;
    let mut out = Vec::new();
    let mut fig = 0;
    let mut next = |name: &str| {
        fig += 1;
        format!("fig{fig:02}_{name}")
    };

    let date = |i: usize| data.date(i).map(|d| d.to_string()).unwrap_or_default();

    let rows = data
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| vec![(i + 1).to_string(), date(i), v.to_string()])
        .collect();
    let points = index_points(&data.values, 0);
    let base = next("series");
    write_figure(
        dir,
        &base,
        &["t", "date", "value"],
        rows,
        Chart::new("Observed series").layer("observed", "black", Style::Line, points),
        &mut out,
    )?;

    let rows = data
        .stationary
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let pos = i + data.stationary_offset;
            vec![(pos + 1).to_string(), date(pos), v.to_string()]
        })
        .collect();
    let points = index_points(&data.stationary, data.stationary_offset);
    let base = next("stationary");
    write_figure(
        dir,
        &base,
        &["t", "date", "value"],
        rows,
        Chart::new(format!(
            "Training series after {} difference(s)",
            data.stationary_offset
        ))
        .layer("stationary", "black", Style::Line, points)
        .hline(0.0),
        &mut out,
    )?;

    let rows = data
        .qq
        .iter()
        .enumerate()
        .map(|(i, (th, s))| vec![(i + 1).to_string(), th.to_string(), s.to_string()])
        .collect();
    let base = next("qq");
    write_figure(
        dir,
        &base,
        &["i", "theoretical", "sample"],
        rows,
        Chart::new("Normal Q-Q").layer("sample", "black", Style::Points, data.qq.clone()),
        &mut out,
    )?;

    for (name, title, c) in [("acf", "ACF", &data.acf), ("pacf", "PACF", &data.pacf)] {
        let base = next(name);
        if let Some(c) = c {
            correlogram_figure(dir, &base, title, c, &mut out)?;
        }
    }

    for m in &data.models {
        let rows = m
            .forecast
            .iter()
            .map(|r| {
                vec![
                    r.t.to_string(),
                    r.date.map(|d| d.to_string()).unwrap_or_default(),
                    r.actual.map(|a| a.to_string()).unwrap_or_default(),
                    r.forecast.to_string(),
                    r.se.to_string(),
                ]
            })
            .collect();
        let tf = |f: &dyn Fn(&super::ForecastRow) -> Option<f64>| -> Vec<(f64, f64)> {
            m.forecast.iter().filter_map(|r| f(r).map(|y| (r.t as f64, y))).collect()
        };
        let chart = Chart::new(format!("{} forecast", m.label))
            .layer("actual", "black", Style::Line, tf(&|r| r.actual))
            .layer("forecast", "red", Style::Line, tf(&|r| Some(r.forecast)))
            .layer("+1.96 se", "gray", Style::Line, tf(&|r| Some(r.forecast + 1.96 * r.se)))
            .layer("-1.96 se", "gray", Style::Line, tf(&|r| Some(r.forecast - 1.96 * r.se)));
        let base = next(&format!("forecast_{}", slug(&m.label)));
        write_figure(dir, &base, &["t", "date", "actual", "forecast", "se"], rows, chart, &mut out)?;
    }

    for m in &data.models {
        let rows = m
            .prediction
            .iter()
            .map(|r| {
                vec![
                    r.t.to_string(),
                    r.date.map(|d| d.to_string()).unwrap_or_default(),
                    r.actual.to_string(),
                    r.predicted.to_string(),
                ]
            })
            .collect();
        let actual = m.prediction.iter().map(|r| (r.t as f64, r.actual)).collect();
        let predicted = m.prediction.iter().map(|r| (r.t as f64, r.predicted)).collect();
        let chart = Chart::new(format!("{} one-step predictions", m.label))
            .layer("actual", "black", Style::Line, actual)
            .layer("predicted", "red", Style::Line, predicted);
        let base = next(&format!("prediction_{}", slug(&m.label)));
        write_figure(dir, &base, &["t", "date", "actual", "predicted"], rows, chart, &mut out)?;
    }

    if let Some(m) = data.models.get(data.selected) {
        let rows = m
            .residuals
            .iter()
            .enumerate()
            .map(|(i, r)| vec![(i + 1 + data.stationary_offset).to_string(), r.to_string()])
            .collect();
        let points = index_points(&m.residuals, data.stationary_offset);
        let chart = Chart::new(format!("{} residuals", m.label))
            .layer("residual", "black", Style::Line, points)
            .hline(0.0);
        let base = next("residuals");
        write_figure(dir, &base, &["t", "residual"], rows, chart, &mut out)?;
    }
    Ok(out)
}

fn index_points(values: &[f64], offset: usize) -> Vec<(f64, f64)> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| ((i + offset + 1) as f64, v))
        .collect()
}

fn correlogram_figure(
    dir: &Path,
    base: &str,
    title: &str,
    c: &Correlogram,
    out: &mut Vec<PathBuf>,
) -> Result<()> {
    let rows = c
        .lags()
        .map(|(lag, v)| vec![lag.to_string(), v.to_string(), c.band.to_string()])
        .collect();
    let points = c.lags().map(|(lag, v)| (lag as f64, v)).collect();
    let chart = Chart::new(title)
        .layer(title, "black", Style::Stem, points)
        .hline(c.band)
        .hline(-c.band);
    write_figure(dir, base, &["lag", "coefficient", "band"], rows, chart, out)
}

fn write_figure(
    dir: &Path,
    base: &str,
    header: &[&str],
    rows: Vec<Vec<String>>,
    chart: Chart,
    out: &mut Vec<PathBuf>,
) -> Result<()> {
    let csv_path = dir.join(format!("{base}.csv"));
    let mut w = csv::Writer::from_path(&csv_path).map_err(csv_error)?;
    w.write_record(header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    w.flush()?;
    let svg_path = dir.join(format!("{base}.svg"));
    std::fs::write(&svg_path, chart.render())?;
    out.push(csv_path);
    out.push(svg_path);
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// `"ARMA(1,1)"` becomes `"arma_1_1"`.
pub(crate) fn slug(label: &str) -> String {
    let mut s = String::new();
    for ch in label.chars() {
        if ch.is_ascii_alphanumeric() {
            s.push(ch.to_ascii_lowercase());
        } else if !s.ends_with('_') {
            s.push('_');
        }
    }
    s.trim_end_matches('_').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slugs() {
        assert_eq!(slug("ARMA(1,1)"), "arma_1_1");
        assert_eq!(slug("MA(5)"), "ma_5");
        assert_eq!(slug("GARMA(1,0)"), "garma_1_0");
    }
}
