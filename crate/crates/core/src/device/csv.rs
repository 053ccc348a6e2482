// Copyright 2026 The flyqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::io::Write;

/// Writes a two-column CSV table with 13 significant digits per value.
pub fn write_csv<W: Write>(mut out: W, header: &str, rows: &[(f64, f64)]) -> std::io::Result<()>
{
    writeln!(out, "{header}")?;
    for (a, b) in rows
    {
        writeln!(out, "{:.12e},{:.12e}", a, b)?;
    }
    out.flush()
}
