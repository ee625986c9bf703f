//! Published robustness results for eleven oriented detectors on the
//! corrupted DOTA-v1.0 test set. `kind_ap` is the severity-averaged AP@50
//! per corruption kind in table order; the remaining fields are the
//! reported aggregates (all in percent).

pub struct Published {
    pub detector: &'static str,
    pub clean: f64,
    pub mpc: f64,
    pub kind_ap: [f64; 19],
    pub rpc: f64,
    /// noise, blur, weather, digital
    pub category_rpc: [f64; 4],
    pub clouds: f64,
    pub rpc_clouds: f64,
}

macro_rules! row {
    ($name:literal, $clean:literal, $mpc:literal, [$($ap:literal)*], $rpc:literal, [$($c:literal)*], $cl:literal, $rc:literal) => {
        Published {
            detector: $name,
            clean: $clean,
            mpc: $mpc,
            kind_ap: [$($ap),*],
            rpc: $rpc,
            category_rpc: [$($c),*],
            clouds: $cl,
            rpc_clouds: $rc,
        }
    };
}

pub const DETECTORS: [Published; 11] = [
    row!("Rotated Faster R-CNN", 73.4, 38.9,
        [20.2 19.7 17.7 27.6 40.5 46.4 40.6 14.1 43.0 24.3 46.2 49.3 63.1 46.7 42.4 33.2 53.1 50.4 60.7],
        53.01, [29.01 50.31 62.56 65.38], 58.53, 79.73),
    row!("RoI Transformer", 76.1, 39.9,
        [19.8 20.2 17.8 29.1 41.1 48.8 42.6 14.7 44.0 26.5 47.1 49.2 63.5 49.4 42.5 35.0 53.6 51.5 62.3],
        52.46, [28.55 50.24 61.95 64.35], 60.03, 78.90),
    row!("Oriented R-CNN", 75.7, 40.7,
        [21.7 21.7 18.7 30.3 41.9 49.0 42.3 14.8 44.3 25.6 48.7 51.5 65.6 48.5 43.2 34.9 55.5 50.7 63.4],
        53.71, [30.52 50.84 63.39 65.45], 60.59, 80.05),
    row!("ReDet", 76.7, 45.9,
        [24.7 24.6 22.4 34.3 50.3 53.6 48.3 18.1 53.2 35.3 58.3 63.1 70.5 52.0 54.3 33.2 59.4 52.4 64.9],
        59.90, [34.55 58.27 72.81 68.91], 66.19, 86.33),
    row!("SFRNet", 75.9, 41.3,
        [22.0 22.2 19.6 30.4 42.6 49.4 43.6 14.8 45.4 28.0 48.7 51.5 66.1 49.3 44.0 35.2 55.6 52.5 63.5],
        54.39, [31.04 51.59 64.18 66.10], 60.38, 79.55),
    row!("OAN", 73.9, 40.0,
        [19.4 20.1 17.2 28.6 41.6 49.0 43.8 14.6 44.4 26.0 47.6 50.1 64.1 48.8 42.7 34.5 53.9 51.5 61.8],
        54.08, [28.84 52.34 64.00 66.10], 60.25, 81.51),
    row!("Rotated RetinaNet", 68.4, 37.3,
        [20.0 19.7 16.9 26.7 40.5 45.8 39.6 14.0 43.3 23.3 45.2 47.9 59.4 42.9 40.3 31.5 48.0 46.4 58.1],
        54.57, [30.40 53.55 63.93 65.55], 55.12, 80.55),
    row!("Rotated FCOS", 71.3, 38.9,
        [20.6 20.5 18.7 27.6 41.3 46.8 39.6 14.5 43.7 26.1 46.6 50.7 61.2 45.8 43.8 31.6 51.4 48.3 59.6],
        54.50, [30.67 52.13 64.62 65.85], 57.51, 80.68),
    row!("R3Det", 69.8, 37.8,
        [19.9 19.6 17.3 27.4 38.6 44.3 38.0 14.4 42.0 24.8 46.5 48.6 61.1 43.8 41.8 31.8 51.7 47.1 59.4],
        54.14, [30.14 50.80 64.38 66.43], 56.65, 81.15),
    row!("S2A-Net", 73.9, 39.8,
        [18.6 18.6 15.7 26.3 42.3 48.4 41.2 15.1 44.9 28.7 49.7 53.2 64.0 46.5 45.0 33.8 50.9 49.9 62.7],
        53.81, [26.83 51.96 65.50 65.57], 59.29, 80.22),
    row!("PSC", 71.9, 37.9,
        [18.3 18.2 16.0 25.3 41.5 46.0 40.6 14.4 44.7 23.8 46.0 49.9 61.3 44.4 42.3 32.8 48.0 46.8 59.2],
        52.67, [27.01 52.10 62.72 63.73], 57.25, 79.62),
];
