from bench.bench import (BENCH_COLUMNS, BenchEntry, BenchRow, fit_exponent, load_manifest, median_nodes,
                         parse_manifest, run_bench, run_entry, to_frame, write_csv, write_json)
