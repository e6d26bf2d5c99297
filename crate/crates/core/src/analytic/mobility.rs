//! City-section mobility model: epoch-based movement on a rectangular road
//! grid with uniform speed and uniform pause time, yielding the expected
//! subnet-crossing (handover) rate.

use super::AnalyticError;
use crate::Scalar;

/// Parameters of the city-section mobility model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobilityParams<S> {
    /// Section length, m.
    pub section_length_m: S,
    /// Section width, m.
    pub section_width_m: S,
    /// Distance between adjacent vertical roads, m.
    pub road_spacing_x_m: S,
    /// Distance between adjacent horizontal roads, m.
    pub road_spacing_y_m: S,
    /// Cell radius, m.
    pub cell_radius_m: S,
    /// Minimum node speed, m/s.
    pub v_min_mps: S,
    /// Maximum node speed, m/s.
    pub v_max_mps: S,
    /// Maximum pause time at a destination, s.
    pub pause_max_s: S,
    /// Segment count of the crossing model.
    pub crossing_segments: u32,
}

impl<S: Scalar> Default for MobilityParams<S> {
    fn default() -> Self {
        MobilityParams {
            section_length_m: S::from_u32_exact(36_000),
            section_width_m: S::from_u32_exact(24_000),
            road_spacing_x_m: S::from_u32_exact(10),
            road_spacing_y_m: S::from_u32_exact(10),
            cell_radius_m: S::from_u32_exact(100),
            v_min_mps: S::one(),
            v_max_mps: S::from_u32_exact(50),
            pause_max_s: S::from_u32_exact(70),
            crossing_segments: 6,
        }
    }
}

impl<S: Scalar> MobilityParams<S> {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        if !(self.road_spacing_x_m > S::zero() && self.road_spacing_y_m > S::zero()) {
            return Err(AnalyticError::Domain("road spacings must be positive"));
        }
        if self.section_length_m < self.road_spacing_x_m
            || self.section_width_m < self.road_spacing_y_m
        {
            return Err(AnalyticError::Domain(
                "section dimensions must cover at least one road spacing",
            ));
        }
        if !(self.cell_radius_m > S::zero()) {
            return Err(AnalyticError::Domain("cell radius must be positive"));
        }
        if !(self.v_min_mps > S::zero() && self.v_max_mps > self.v_min_mps) {
            return Err(AnalyticError::Domain(
                "speeds must satisfy 0 < v_min < v_max",
            ));
        }
        if self.pause_max_s < S::zero() {
            return Err(AnalyticError::Domain("pause time must be non-negative"));
        }
        Ok(())
    }

    /// Number of vertical road positions along the section length.
    pub fn horizontal_positions(&self) -> S {
        (self.section_length_m / self.road_spacing_x_m).ceil()
    }

    /// Number of horizontal road positions along the section width.
    pub fn vertical_positions(&self) -> S {
        (self.section_width_m / self.road_spacing_y_m).ceil()
    }
}

/// Expected epoch (trip) length, m.
pub fn epoch_length<S: Scalar>(mob: &MobilityParams<S>) -> S {
    let three = S::from_u32_exact(3);
    let one = S::one();
    let nh = mob.horizontal_positions();
    let nv = mob.vertical_positions();
    mob.road_spacing_x_m * (nh + one) * (nh - one) / (three * nh)
        + mob.road_spacing_y_m * (nv + one) * (nv - one) / (three * nv)
}

fn crossings_along_axis<S: Scalar>(ratio: S, positions: S, segments: u32) -> S {
    let m = S::from_u32_exact(segments);
    let six = S::from_u32_exact(6);
    let four = S::from_u32_exact(4);
    let three = S::from_u32_exact(3);
    m * (m + S::one()) * ratio / (six * positions * positions)
        * (six * positions - four * m * ratio + ratio + three)
}

/// Expected number of cell-boundary crossings per epoch.
pub fn expected_crossings<S: Scalar>(mob: &MobilityParams<S>) -> S {
    let two = S::from_u32_exact(2);
    let k1 = two * mob.cell_radius_m / mob.road_spacing_x_m;
    let k2 = two * mob.cell_radius_m / mob.road_spacing_y_m;
    crossings_along_axis(k1, mob.horizontal_positions(), mob.crossing_segments)
        + crossings_along_axis(k2, mob.vertical_positions(), mob.crossing_segments)
}

/// Expected handovers per second: crossings per epoch divided by the
/// expected epoch time (travel plus twice the mean pause).
pub fn handover_rate<S: Scalar>(mob: &MobilityParams<S>) -> Result<S, AnalyticError> {
    if !(mob.v_min_mps > S::zero()) || mob.v_max_mps <= mob.v_min_mps {
        return Err(AnalyticError::Domain(
            "speeds must satisfy 0 < v_min < v_max",
        ));
    }
    let travel =
        epoch_length(mob) * (mob.v_max_mps / mob.v_min_mps).ln() / (mob.v_max_mps - mob.v_min_mps);
    let pause = mob.pause_max_s / S::from_u32_exact(2);
    Ok(expected_crossings(mob) / (travel + S::from_u32_exact(2) * pause))
}

/// Expected epoch travel time, s (exposed for cross-checks).
pub fn epoch_travel_time<S: Scalar>(mob: &MobilityParams<S>) -> S {
    epoch_length(mob) * (mob.v_max_mps / mob.v_min_mps).ln() / (mob.v_max_mps - mob.v_min_mps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn defaults() -> MobilityParams<f64> {
        MobilityParams::default()
    }

    #[test]
    fn epoch_length_at_defaults() {
        assert_relative_eq!(
            epoch_length(&defaults()),
            19999.997685185186,
            epsilon = 1e-6
        );
    }

    #[test]
    fn epoch_length_degenerate_grid() {
        let mob = MobilityParams {
            section_length_m: 10.0,
            section_width_m: 10.0,
            ..defaults()
        };
        // a single road position in each axis: no travel distance
        assert_eq!(epoch_length(&mob), 0.0);
    }

    #[test]
    fn epoch_length_dominated_by_section_size() {
        let base = epoch_length(&defaults());
        let doubled = epoch_length(&MobilityParams {
            road_spacing_x_m: 20.0,
            ..defaults()
        });
        assert!((doubled - base).abs() / base < 1e-3);
    }

    #[test]
    fn crossings_at_defaults() {
        let mob = defaults();
        let two = 2.0 * mob.cell_radius_m;
        let k1 = two / mob.road_spacing_x_m;
        let ex = crossings_along_axis(k1, mob.horizontal_positions(), 6);
        let ey = crossings_along_axis(two / mob.road_spacing_y_m, mob.vertical_positions(), 6);
        assert_relative_eq!(ex, 0.2283966049382716, epsilon = 1e-9);
        assert_relative_eq!(ey, 0.3388923611111111, epsilon = 1e-9);
        assert_relative_eq!(expected_crossings(&mob), 0.5672889660493827, epsilon = 1e-9);
    }

    #[test]
    fn crossings_vanish_with_radius() {
        let mob = MobilityParams {
            cell_radius_m: 1e-9,
            ..defaults()
        };
        assert!(expected_crossings(&mob) < 1e-9);
    }

    #[test]
    fn crossings_vanish_without_segments() {
        let mob = MobilityParams {
            crossing_segments: 0,
            ..defaults()
        };
        assert_eq!(expected_crossings(&mob), 0.0);
    }

    #[test]
    fn rate_at_defaults() {
        assert_relative_eq!(
            epoch_travel_time(&defaults()),
            1596.7438990398798,
            epsilon = 1e-6
        );
        assert_relative_eq!(
            handover_rate(&defaults()).unwrap(),
            3.403576076541615e-4,
            epsilon = 1e-12
        );
    }

    #[test]
    fn rate_rejects_degenerate_speeds() {
        let mob = MobilityParams {
            v_min_mps: 50.0,
            v_max_mps: 50.0,
            ..defaults()
        };
        assert!(handover_rate(&mob).is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let mob: MobilityParams<f32> = MobilityParams::default();
        assert!((epoch_length(&mob) - 20000.0).abs() < 1.0);
        let rate = handover_rate(&mob).unwrap();
        assert!((rate - 3.4036e-4).abs() / 3.4036e-4 < 1e-2);
    }

    #[test]
    fn rate_vanishes_with_long_pauses() {
        let short = handover_rate(&defaults()).unwrap();
        let long = handover_rate(&MobilityParams {
            pause_max_s: 1e12,
            ..defaults()
        })
        .unwrap();
        assert!(long < short * 1e-6);
    }
}
