//! CSV and PGM writers.

use std::io::{self, Write};

use crate::raster::RasterGrid;
use crate::spectra::SpectralCloud;

pub const CLOUD_HEADER: &str = "re,im,source,param";

/// Binary PGM (P5, maxval 255).
pub fn write_pgm<W: Write>(mut w: W, grid: &RasterGrid) -> io::Result<()> {
    write!(w, "P5\n{} {}\n255\n", grid.width, grid.height)?;
    w.write_all(&grid.to_gray())?;
    w.flush()
}

/// Point cloud as CSV with [`CLOUD_HEADER`]. Coordinates use 17 significant
/// digits so the file round-trips exactly.
pub fn write_cloud_csv<W: Write>(mut w: W, cloud: &SpectralCloud) -> io::Result<()> {
    writeln!(w, "{CLOUD_HEADER}")?;
    for p in &cloud.points {
        writeln!(
            w,
            "{:.17e},{:.17e},{},{:.17e}",
            p.z.re, p.z.im, p.source, p.param
        )?;
    }
    w.flush()
}

pub fn cloud_csv_string(cloud: &SpectralCloud) -> String {
    let mut buf = Vec::new();
    write_cloud_csv(&mut buf, cloud).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}
