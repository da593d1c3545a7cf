use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pyramid_stego::metrics::{self, DEFAULT_ZCR_FRAME_LEN};
use pyramid_stego::{CapacityReport, HeaderMode, Method, QualityReport, RangeTable, WavAudio};

/// Hide files inside PCM WAV audio and measure the result.
#[derive(Debug, Parser)]
#[command(name = "pyrstego", version)]
struct Cli {
    /// Treat the first 44 bytes as the header instead of walking RIFF chunks.
    #[arg(long = "compat-44", global = true)]
    compat_44: bool,

    /// Range table file (`low high depth` per line). Defaults to the built-in table.
    #[arg(long, global = true, value_name = "FILE")]
    table: Option<PathBuf>,

    /// Use classic 1-bit sequential LSB instead of the pyramid/range method.
    #[arg(long, global = true)]
    baseline: bool,

    /// Frame length in samples for zero-crossing rate.
    #[arg(long, global = true, default_value_t = DEFAULT_ZCR_FRAME_LEN)]
    frame_len: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed SECRET into COVER and write the stego WAV to OUT.
    Embed { cover: PathBuf, secret: PathBuf, out: PathBuf },
    /// Recover the secret from STEGO into OUT.
    Extract { stego: PathBuf, out: PathBuf },
    /// Print how much a cover can hold.
    Capacity { cover: PathBuf },
    /// Compare COVER and STEGO and write a JSON quality report.
    Analyze { cover: PathBuf, stego: PathBuf, report: PathBuf },
    /// Write an amplitude histogram (or ZCR series) as CSV.
    Histogram {
        input: PathBuf,
        out: PathBuf,
        /// Emit per-frame zero-crossing rate instead of the byte histogram.
        #[arg(long)]
        zcr: bool,
        /// Treat the input as raw 8-bit bytes rather than a WAV file.
        #[arg(long)]
        raw: bool,
    },
}

/// Usage and I/O failures exit 1, steganographic/format failures exit 2.
#[derive(Debug)]
enum Failure {
    Io(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Domain(_) => 2,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(io_err(path))
}

/// Writes via a temporary file in the destination directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err(path))?;
    tmp.write_all(bytes).map_err(io_err(path))?;
    tmp.persist(path).map_err(|e| Failure::Io(format!("{}: {}", path.display(), e.error)))?;
    Ok(())
}

impl Cli {
    fn mode(&self) -> HeaderMode {
        if self.compat_44 {
            HeaderMode::Compat44
        } else {
            HeaderMode::RiffChunks
        }
    }

    fn method(&self) -> Result<Method, Failure> {
        if self.baseline {
            return Ok(Method::PlainLsb);
        }
        let table = match &self.table {
            Some(p) => {
                let text = fs::read_to_string(p).map_err(io_err(p))?;
                text.parse::<RangeTable>()
                    .map_err(|e| Failure::Domain(format!("{}: {e}", p.display())))?
            }
            None => RangeTable::default_table(),
        };
        Ok(Method::Pyramid(table))
    }

    fn load_wav(&self, path: &Path) -> Result<WavAudio, Failure> {
        let bytes = read(path)?;
        WavAudio::parse(&bytes, self.mode())
            .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
    }

    fn run(&self) -> Result<(), Failure> {
        match &self.command {
            Command::Embed { cover, secret, out } => {
                let method = self.method()?;
                let cover = self.load_wav(cover)?;
                let secret = read(secret)?;
                let stego = method.embed(&cover, &secret).map_err(domain)?;
                write_atomic(out, &stego.serialize())?;
                let cap = CapacityReport::new(&method, &cover);
                println!(
                    "embedded {} bytes: {} of {} bits used",
                    secret.len(),
                    pyramid_stego::codec::frame_bits(secret.len()),
                    cap.gross_bits
                );
            }
            Command::Extract { stego, out } => {
                let method = self.method()?;
                let stego = self.load_wav(stego)?;
                let secret = method.extract(&stego).map_err(domain)?;
                write_atomic(out, &secret)?;
                println!("extracted {} bytes", secret.len());
            }
            Command::Capacity { cover } => {
                let method = self.method()?;
                let cover = self.load_wav(cover)?;
                print!("{}", CapacityReport::new(&method, &cover));
            }
            Command::Analyze { cover, stego, report } => {
                let method = self.method()?;
                let cover = self.load_wav(cover)?;
                let stego = self.load_wav(stego)?;
                let secret_bytes = method.extract(&stego).map(|s| s.len() as u64).unwrap_or(0);
                let r = QualityReport::compute(&cover, &stego, secret_bytes, self.frame_len)
                    .map_err(domain)?;
                write_atomic(report, r.to_json().as_bytes())?;
                print!("{}", r.summary());
            }
            Command::Histogram { input, out, zcr, raw } => {
                let (data, bits) = if *raw {
                    (read(input)?, 8)
                } else {
                    let w = self.load_wav(input)?;
                    let bits = w.bits_per_sample();
                    (w.data_bytes().to_vec(), bits)
                };
                let csv = if *zcr {
                    let x = metrics::centered_samples(&data, bits);
                    metrics::zcr_csv(&metrics::zcr(&x, self.frame_len).map_err(domain)?)
                } else {
                    metrics::histogram_csv(&metrics::amplitude_histogram(&data))
                };
                write_atomic(out, csv.as_bytes())?;
            }
        }
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match cli.run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Io(m) | Failure::Domain(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
