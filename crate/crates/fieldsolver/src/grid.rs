use colloids_model::{ParticleConfiguration, Point};
use num_complex::Complex64;

use crate::{FieldSolverError, Result};

/// Nodes closer than this fraction of h to a circle are treated as inside,
/// so that every cut arm is at least this long.
const NEAR_BOUNDARY: f64 = 1e-2;

pub(crate) const DIRECTIONS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Classification of one grid node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    /// Unknown with the given index.
    Free(usize),
    /// On the outer box, held at zero.
    Outer,
    /// Inside, on, or within a hair of the boundary of disk q.
    Inside(usize),
}

/// A grid edge from a free node into a disk.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cut {
    pub node: usize,
    pub dir: usize,
    /// Distance from the node to the circle in units of h; slightly above 1
    /// when the neighbour was absorbed into the disk.
    pub theta: f64,
    pub g: Complex64,
    /// Outward unit normal of the disk at the crossing.
    pub normal: Point,
    /// Derivative of the data along the counter-clockwise tangent, d g/ds.
    pub g_tangential: Complex64,
}

#[derive(Debug, Clone)]
pub(crate) struct Mesh {
    pub h: f64,
    pub origin: Point,
    pub nx: usize,
    pub ny: usize,
    pub nodes: Vec<Node>,
    /// Grid position (i, j) of each free node.
    pub free: Vec<(usize, usize)>,
    pub cuts: Vec<Cut>,
    /// For each free node and direction: neighbour free index, or usize::MAX.
    pub neighbours: Vec<[usize; 4]>,
    /// For each free node and direction: index into `cuts`, or usize::MAX.
    pub cut_of: Vec<[usize; 4]>,
}

impl Mesh {
    pub fn position(&self, i: usize, j: usize) -> Point {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    pub fn node(&self, i: i64, j: i64) -> Node {
        if i < 0 || j < 0 || i as usize >= self.nx || j as usize >= self.ny {
            return Node::Outer;
        }
        self.nodes[i as usize * self.ny + j as usize]
    }

    /// Build the mesh for a configuration, aligning the first disk's centre
    /// with a grid node.
    pub fn build(config: &ParticleConfiguration, h: f64, padding: f64) -> Result<Self> {
        config.validate()?;
        let config = config.to_blown_up();
        if config.particles.is_empty() {
            return Err(FieldSolverError::InvalidInput("configuration has no particles".into()));
        }
        if !(h > 0.0) {
            return Err(FieldSolverError::InvalidInput(format!("grid spacing {h} must be positive")));
        }
        if padding < 8.0 {
            return Err(FieldSolverError::InvalidInput(format!("padding {padding} must be at least 8")));
        }
        let mut limit = config.particles.iter().map(|p| p.radius / 4.0).fold(f64::INFINITY, f64::min);
        if let Some(b) = config.min_gap() {
            limit = limit.min(b / 4.0);
        }
        if h > limit {
            return Err(FieldSolverError::MeshTooCoarse { h, limit });
        }
        let parts = &config.particles;
        let lo_x = parts.iter().map(|p| p.center[0] - p.radius).fold(f64::INFINITY, f64::min) - padding;
        let lo_y = parts.iter().map(|p| p.center[1] - p.radius).fold(f64::INFINITY, f64::min) - padding;
        let hi_x = parts.iter().map(|p| p.center[0] + p.radius).fold(f64::NEG_INFINITY, f64::max) + padding;
        let hi_y = parts.iter().map(|p| p.center[1] + p.radius).fold(f64::NEG_INFINITY, f64::max) + padding;
        let c0 = parts[0].center;
        let origin = [c0[0] - ((c0[0] - lo_x) / h).ceil() * h, c0[1] - ((c0[1] - lo_y) / h).ceil() * h];
        let nx = ((hi_x - origin[0]) / h).ceil() as usize + 1;
        let ny = ((hi_y - origin[1]) / h).ceil() as usize + 1;

        let mut nodes = vec![Node::Outer; nx * ny];
        let mut free = Vec::new();
        for i in 0..nx {
            for j in 0..ny {
                let x = [origin[0] + i as f64 * h, origin[1] + j as f64 * h];
                let inside = parts.iter().position(|p| {
                    let dx = x[0] - p.center[0];
                    let dy = x[1] - p.center[1];
                    let rr = p.radius + NEAR_BOUNDARY * h;
                    dx * dx + dy * dy <= rr * rr
                });
                nodes[i * ny + j] = match inside {
                    Some(q) => Node::Inside(q),
                    None if i == 0 || j == 0 || i == nx - 1 || j == ny - 1 => Node::Outer,
                    None => {
                        free.push((i, j));
                        Node::Free(free.len() - 1)
                    }
                };
            }
        }

        let mut mesh = Mesh {
            h,
            origin,
            nx,
            ny,
            nodes,
            free,
            cuts: Vec::new(),
            neighbours: Vec::new(),
            cut_of: Vec::new(),
        };
        let mut neighbours = Vec::with_capacity(mesh.free.len());
        let mut cut_of = Vec::with_capacity(mesh.free.len());
        let mut cuts = Vec::new();
        for (k, &(i, j)) in mesh.free.iter().enumerate() {
            let mut nb = [usize::MAX; 4];
            let mut co = [usize::MAX; 4];
            let x = mesh.position(i, j);
            for (d, &(di, dj)) in DIRECTIONS.iter().enumerate() {
                match mesh.node(i as i64 + di, j as i64 + dj) {
                    Node::Free(idx) => nb[d] = idx,
                    Node::Outer => {}
                    Node::Inside(q) => {
                        let p = &parts[q];
                        let (ox, oy) = (x[0] - p.center[0], x[1] - p.center[1]);
                        let (ex, ey) = (di as f64 * h, dj as f64 * h);
                        let a = ex * ex + ey * ey;
                        let b = 2.0 * (ox * ex + oy * ey);
                        let c = ox * ox + oy * oy - p.radius * p.radius;
                        let disc = (b * b - 4.0 * a * c).max(0.0);
                        let theta = ((-b - disc.sqrt()) / (2.0 * a)).clamp(NEAR_BOUNDARY, 1.0 + 2.0 * NEAR_BOUNDARY);
                        let px = ox + theta * ex;
                        let py = oy + theta * ey;
                        let phi = py.atan2(px);
                        let normal = [phi.cos(), phi.sin()];
                        let g = p.data.eval(phi);
                        let g_tangential = p
                            .data
                            .modes()
                            .iter()
                            .map(|(m, gm)| gm * Complex64::new(0.0, *m as f64) * Complex64::from_polar(1.0, *m as f64 * phi))
                            .sum::<Complex64>()
                            / p.radius;
                        co[d] = cuts.len();
                        cuts.push(Cut { node: k, dir: d, theta, g, normal, g_tangential });
                    }
                }
            }
            neighbours.push(nb);
            cut_of.push(co);
        }
        mesh.neighbours = neighbours;
        mesh.cut_of = cut_of;
        mesh.cuts = cuts;
        Ok(mesh)
    }

    pub fn into_solution(self, values: &[Complex64], energy: f64, iterations: usize, residual: f64) -> GridSolution {
        let mut full = vec![Complex64::new(f64::NAN, f64::NAN); self.nx * self.ny];
        for (idx, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Free(k) => full[idx] = values[*k],
                Node::Outer => full[idx] = Complex64::new(0.0, 0.0),
                Node::Inside(_) => {}
            }
        }
        GridSolution {
            h: self.h,
            origin: self.origin,
            nx: self.nx,
            ny: self.ny,
            values: full,
            energy,
            iterations,
            residual,
        }
    }
}

/// Node values of a field on a uniform Cartesian grid. Nodes inside disks
/// hold NaN.
#[derive(Debug, Clone)]
pub struct GridSolution {
    pub h: f64,
    /// Position of node (0, 0).
    pub origin: Point,
    pub nx: usize,
    pub ny: usize,
    values: Vec<Complex64>,
    /// κ for the linear solver, the discrete functional for the nonlinear one.
    pub energy: f64,
    pub iterations: usize,
    pub residual: f64,
}

impl GridSolution {
    pub fn node_value(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.ny + j]
    }

    pub fn node_position(&self, i: usize, j: usize) -> Point {
        [self.origin[0] + i as f64 * self.h, self.origin[1] + j as f64 * self.h]
    }

    pub fn is_masked(&self, i: usize, j: usize) -> bool {
        self.node_value(i, j).re.is_nan()
    }

    /// Nearest node index to x, if inside the grid.
    pub fn nearest_node(&self, x: Point) -> Option<(usize, usize)> {
        let i = ((x[0] - self.origin[0]) / self.h).round();
        let j = ((x[1] - self.origin[1]) / self.h).round();
        (i >= 0.0 && j >= 0.0 && (i as usize) < self.nx && (j as usize) < self.ny).then_some((i as usize, j as usize))
    }

    /// Bilinear interpolation; None outside the grid or next to a masked node.
    pub fn interpolate(&self, x: Point) -> Option<Complex64> {
        let fx = (x[0] - self.origin[0]) / self.h;
        let fy = (x[1] - self.origin[1]) / self.h;
        if fx < 0.0 || fy < 0.0 {
            return None;
        }
        let i = fx.floor() as usize;
        let j = fy.floor() as usize;
        if i + 1 >= self.nx || j + 1 >= self.ny {
            return None;
        }
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        let v = [
            self.node_value(i, j),
            self.node_value(i + 1, j),
            self.node_value(i, j + 1),
            self.node_value(i + 1, j + 1),
        ];
        if v.iter().any(|z| z.re.is_nan()) {
            return None;
        }
        Some(v[0] * ((1.0 - tx) * (1.0 - ty)) + v[1] * (tx * (1.0 - ty)) + v[2] * ((1.0 - tx) * ty) + v[3] * (tx * ty))
    }
}
