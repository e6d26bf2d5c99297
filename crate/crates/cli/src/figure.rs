//! Figure-data sweeps. Each figure id binds one (or, for the crossing-rate
//! surface, two) sweep axes; a `sweep.<axis>` line in the configuration
//! overrides the default range, any other sweep key is rejected.

use std::path::Path;

use mihsim_core::analytic::{
    handover_delay, handover_rate, per_handover_cost, ratio_to_f64, AnalyzedScheme,
};
use mihsim_core::config::{Decimal, RunConfig, SweepRange};

use crate::{write_output, CmdError};

struct FigureSpec {
    id: &'static str,
    axis: &'static str,
    default_range: &'static str,
    /// Second grid axis (crossing-rate surface only).
    axis2: Option<(&'static str, &'static str)>,
    quantity: Quantity,
}

#[derive(Clone, Copy, PartialEq)]
enum Quantity {
    /// Handover delay, ms.
    DelayMs,
    /// Expected handovers per second.
    CrossingRate,
    /// Signaling cost per second.
    CostPerSecond,
}

const FIGURES: &[FigureSpec] = &[
    FigureSpec {
        id: "fig10",
        axis: "rho_f",
        default_range: "0:0.05:0.3",
        axis2: None,
        quantity: Quantity::DelayMs,
    },
    FigureSpec {
        id: "fig11",
        axis: "d_wl_ms",
        default_range: "1:1:50",
        axis2: None,
        quantity: Quantity::DelayMs,
    },
    FigureSpec {
        id: "fig12",
        axis: "cell_radius_m",
        default_range: "50:50:300",
        axis2: Some(("road_d_m", "5:5:50")),
        quantity: Quantity::CrossingRate,
    },
    FigureSpec {
        id: "fig13",
        axis: "h_mag_mag",
        default_range: "1:1:50",
        axis2: None,
        quantity: Quantity::CostPerSecond,
    },
    FigureSpec {
        id: "fig14",
        axis: "p_f",
        default_range: "0.05:0.05:0.9",
        axis2: None,
        quantity: Quantity::CostPerSecond,
    },
    FigureSpec {
        id: "fig15",
        axis: "v_min_mps",
        default_range: "1:5:36",
        axis2: None,
        quantity: Quantity::CostPerSecond,
    },
    FigureSpec {
        id: "fig16",
        axis: "cell_radius_m",
        default_range: "50:50:500",
        axis2: None,
        quantity: Quantity::CostPerSecond,
    },
    FigureSpec {
        id: "fig17",
        axis: "road_d_m",
        default_range: "5:5:50",
        axis2: None,
        quantity: Quantity::CostPerSecond,
    },
];

fn range_for(
    spec_axis: &str,
    default_range: &str,
    cfg: &RunConfig,
) -> Result<Vec<Decimal>, CmdError> {
    let range = match &cfg.sweep {
        Some((key, range)) if key == spec_axis => range.clone(),
        _ => SweepRange::parse(default_range).expect("default ranges are valid"),
    };
    Ok(range.values())
}

fn scheme_values(cfg: &RunConfig, quantity: Quantity) -> Result<[f64; 3], CmdError> {
    let catalog = cfg.catalog();
    let out = match quantity {
        Quantity::DelayMs => {
            let params = cfg.delay_params();
            AnalyzedScheme::ALL.map(|s| handover_delay(s, &params, &catalog, &cfg.topology))
        }
        Quantity::CrossingRate => {
            let rate = handover_rate(&cfg.mobility_params())
                .map_err(|e| CmdError::usage(format!("mobility model: {e}")))?;
            [rate; 3]
        }
        Quantity::CostPerSecond => {
            let rate = handover_rate(&cfg.mobility_params())
                .map_err(|e| CmdError::usage(format!("mobility model: {e}")))?;
            let params = cfg.cost_params();
            AnalyzedScheme::ALL
                .map(|s| rate * ratio_to_f64(per_handover_cost(s, &params, &catalog).total()))
        }
    };
    Ok(out)
}

pub fn run(id: &str, cfg: &RunConfig, out: Option<&Path>) -> Result<(), CmdError> {
    let spec = FIGURES
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| CmdError::usage(format!("unknown figure `{id}` (fig10..fig17)")))?;
    if let Some((key, _)) = &cfg.sweep {
        let known = key == spec.axis || spec.axis2.is_some_and(|(a2, _)| key == a2);
        if !known {
            return Err(CmdError::usage(format!(
                "sweep axis `{key}` does not belong to {id} (expected {})",
                spec.axis
            )));
        }
    }
    let xs = range_for(spec.axis, spec.default_range, cfg)?;
    let mut csv = String::new();
    match spec.axis2 {
        None => {
            csv.push_str("x,standard,fast,proposed\n");
            for x in xs {
                let mut row_cfg = cfg.clone();
                row_cfg
                    .set_swept(spec.axis, x)
                    .map_err(|e| CmdError::usage(e.to_string()))?;
                let [std, fast, prop] = scheme_values(&row_cfg, spec.quantity)?;
                csv.push_str(&format!("{},{},{},{}\n", x, std, fast, prop));
            }
        }
        Some((axis2, default2)) => {
            csv.push_str("x,x2,standard,fast,proposed\n");
            let ys = range_for(axis2, default2, cfg)?;
            for x in &xs {
                for y in &ys {
                    let mut row_cfg = cfg.clone();
                    row_cfg
                        .set_swept(spec.axis, *x)
                        .map_err(|e| CmdError::usage(e.to_string()))?;
                    row_cfg
                        .set_swept(axis2, *y)
                        .map_err(|e| CmdError::usage(e.to_string()))?;
                    let [std, fast, prop] = scheme_values(&row_cfg, spec.quantity)?;
                    csv.push_str(&format!("{},{},{},{},{}\n", x, y, std, fast, prop));
                }
            }
        }
    }
    write_output(out, &csv)
}
