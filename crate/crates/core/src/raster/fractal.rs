use super::{GrayMap, RngStream};

/// Plasma fractal heightmap in `[0, 1]`, generated by diamond-square on
/// the next power-of-two square (wrap-around neighbours) and cropped to
/// `w`x`h`. `roughness_decay` divides the perturbation amplitude at every
/// halving of the step; larger values give smoother maps.
pub fn fractal_noise(w: usize, h: usize, roughness_decay: f32, rng: &mut RngStream) -> GrayMap {
    let n = w.max(h).max(1).next_power_of_two();
    let mut map = vec![0.0f64; n * n];
    let idx = |x: usize, y: usize| (y % n) * n + (x % n);
    let decay = roughness_decay.max(1e-6) as f64;
    let mut wibble = 100.0f64;
    let mut step = n;

    while step >= 2 {
        let half = step / 2;
        // squares: centre of each cell from its four corners
        for y in (0..n).step_by(step) {
            for x in (0..n).step_by(step) {
                let s = map[idx(x, y)] + map[idx(x + step, y)] + map[idx(x, y + step)] + map[idx(x + step, y + step)];
                let v = s / 4.0 + wibble * rng.uniform_range(-wibble, wibble);
                map[idx(x + half, y + half)] = v;
            }
        }
        // diamonds: edge midpoints from the two adjacent corners and centres
        for y in (0..n).step_by(step) {
            for x in (0..n).step_by(step) {
                let up = y as isize - half as isize;
                let centre_above = map[idx(x + half, up.rem_euclid(n as isize) as usize)];
                let s = map[idx(x, y)] + map[idx(x + step, y)] + map[idx(x + half, y + half)] + centre_above;
                map[idx(x + half, y)] = s / 4.0 + wibble * rng.uniform_range(-wibble, wibble);

                let left = x as isize - half as isize;
                let centre_left = map[idx(left.rem_euclid(n as isize) as usize, y + half)];
                let s = map[idx(x, y)] + map[idx(x, y + step)] + map[idx(x + half, y + half)] + centre_left;
                map[idx(x, y + half)] = s / 4.0 + wibble * rng.uniform_range(-wibble, wibble);
            }
        }
        step = half;
        wibble /= decay;
    }

    let mut data = Vec::with_capacity(w * h);
    for y in 0..h {
        data.extend(map[y * n..y * n + w].iter().map(|&v| v as f32));
    }
    let lo = data.iter().copied().fold(f32::INFINITY, f32::min);
    let hi = data.iter().copied().fold(f32::NEG_INFINITY, f32::max);
    let span = hi - lo;
    if span > 0.0 {
        data.iter_mut().for_each(|v| *v = (*v - lo) / span);
    } else {
        data.iter_mut().for_each(|v| *v = 0.0);
    }
    GrayMap { width: w, height: h, data }
}
