"""Execution engine behind `ratbase repro`: turns a manifest into CSV files.

File layout contract (consumed by the plotting frontend):

* table1.csv                           -- columns n,rep
* tableN.csv                           -- combined richness rows, one per
                                          (series, l); plus one CSV per
                                          sub-series named tableN__<slug>.csv
* fig1_<p-q>_cloud.csv / _band.csv     -- richness rows / ensemble rows
* fig2_subject.csv / fig2_band.csv     -- deviation rows / ensemble rows
* fig3_cloud.csv / fig3_band.csv
* fig4_<p-q>_subject_band.csv / _baseline_band.csv
* fig5_left_cloud.csv, fig5_left_band.csv, fig5_left_overlay.csv,
  fig5_right_cloud.csv, fig5_right_band.csv, fig5_right_overlay.csv

Every run also writes <id>.manifest.json recording the full configuration,
tool version, and any overrides.  Randomized series carry their rng seed in
the seed column.  CSV writes are atomic (tmp file + rename).
"""

from __future__ import annotations

import json
import os
import sys
import time
from multiprocessing import get_context

from . import __version__
from .analysis import (
    LetterBuffer,
    deviation_curve,
    ensemble_stats,
    gather,
    geometric_grid,
    letters_richness_entry,
    random_deviation_curve,
    random_richness_entry,
    write_deviation_csv,
    write_ensemble_csv,
    write_richness_csv,
)
from .baselines import ChampernowneStream, DeBruijnStream, RandomWordStream, splitmix64
from .core import Base, rep, word_to_str
from .manifests import (
    MANIFEST_VERSION,
    cloud_l_values,
    expected_random_threshold,
    repro_manifest,
)
from .streams import MinWordStream


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def _slug(label: str) -> str:
    return (
        label.replace("/", "-")
        .replace("[", "_")
        .replace("]", "")
        .replace("=", "")
        .replace(",", "_")
    )


def _sidecar(out_dir: str, manifest: dict, overrides: dict) -> str:
    path = os.path.join(out_dir, f"{manifest['id']}.manifest.json")
    payload = dict(manifest)
    payload["tool_version"] = __version__
    payload["manifest_version"] = MANIFEST_VERSION
    if overrides:
        payload["overrides"] = overrides
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)
    return path


def _series_letters(series: dict, n_letters: int) -> tuple[str, str, bytes, int]:
    """(base_label, seed_label, letters, q) for one table series."""
    word = series["word"]
    if word == "wmin":
        base = Base.parse(series["base"])
        stream = MinWordStream.from_valuation(base, series["seed_val"])
        return str(base), str(series["seed_val"]), gather(stream, n_letters), base.q
    if word == "pi":
        from .constants import pi_word

        q = series["q"]
        return f"pi[q={q}]", "-", pi_word(q, n_letters), q
    if word == "sqrt2":
        from .constants import sqrt2_word

        q = series["q"]
        return f"sqrt2[q={q}]", "-", sqrt2_word(q, n_letters), q
    if word == "random":
        q = series["q"]
        seed = series["rng_seed"]
        return f"random[q={q}]", str(seed), bytes(RandomWordStream(q, seed).take(n_letters)), q
    if word == "champernowne":
        q = series["q"]
        return f"champernowne[q={q}]", "-", bytes(ChampernowneStream(q).take(n_letters)), q
    if word == "debruijn":
        q = series["q"]
        return f"debruijn[q={q}]", "-", bytes(DeBruijnStream(q).take(n_letters)), q
    raise KeyError(f"unknown series kind {word!r}")


def _richness_series_job(args):
    series, n_letters, l_values = args
    if series["word"] == "expected":
        q = series["q"]
        rows = [
            (f"expected[q={q}]", "-", l, expected_random_threshold(q, l), n_letters)
            for l in l_values
        ]
        return series, rows
    label, seed_label, letters, q = _series_letters(series, n_letters)
    rows = []
    for l in l_values:
        entry = letters_richness_entry(letters, q, l)
        rows.append((label, seed_label, l, entry, n_letters))
    return series, rows


def _map_jobs(jobs, worker, workers: int, label: str):
    """Run jobs through `worker`, in-process or via a fork pool."""
    total = len(jobs)
    results = []
    if workers <= 1 or total <= 1:
        for i, job in enumerate(jobs, 1):
            results.append(worker(job))
            _progress(f"[{label}] {i}/{total}")
        return results
    ctx = get_context("fork")
    with ctx.Pool(processes=min(workers, total)) as pool:
        for i, result in enumerate(pool.imap(worker, jobs), 1):
            results.append(result)
            _progress(f"[{label}] {i}/{total}")
    return results


def run_table1(out_dir: str, manifest: dict, overrides: dict) -> list[str]:
    base = Base.parse(manifest["base"])
    path = os.path.join(out_dir, "table1.csv")
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        fh.write("n,rep\n")
        for n in range(manifest["count"]):
            fh.write(f"{n},{word_to_str(base, rep(base, n))}\n")
    os.replace(tmp, path)
    return [path, _sidecar(out_dir, manifest, overrides)]


def run_richness_table(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    n_letters = manifest["n_letters"]
    l_values = manifest["l_values"]
    jobs = [(series, n_letters, l_values) for series in manifest["series"]]
    results = _map_jobs(jobs, _richness_series_job, workers, manifest["id"])
    files = []
    combined = []
    for series, rows in results:
        combined.extend(rows)
        sub = os.path.join(out_dir, f"{manifest['id']}__{_slug(rows[0][0])}_{_slug(rows[0][1])}.csv")
        write_richness_csv(sub, rows)
        files.append(sub)
    main = os.path.join(out_dir, f"{manifest['id']}.csv")
    write_richness_csv(main, combined)
    files.append(main)
    files.append(_sidecar(out_dir, manifest, overrides))
    return files


def sample_valuations(count: int, bound: int, rng_seed: int) -> list[int]:
    """Deterministic seed-word valuations in [1, bound]."""
    vals = []
    state = rng_seed
    while len(vals) < count:
        z, state = splitmix64(state)
        vals.append(1 + z % bound)
    return vals


def _cloud_word_job(args):
    base_str, seed_val, n_letters, l_values = args
    base = Base.parse(base_str)
    letters = gather(MinWordStream.from_valuation(base, seed_val), n_letters)
    entries = [letters_richness_entry(letters, base.q, l) for l in l_values]
    return seed_val, entries


def _random_rt_job(args):
    q, l_values, cap, rng_seed = args
    return [random_richness_entry(q, l, cap, rng_seed) for l in l_values]


def _write_rt_band(path: str, l_values, per_word_entries) -> None:
    """Ensemble band over l from per-word threshold lists (positive entries)."""
    points = []
    for i, l in enumerate(l_values):
        vals = [w[i] for w in per_word_entries if w[i] > 0]
        if not vals:
            continue
        stats = ensemble_stats([l], [[v] for v in vals])
        points.append(stats.points[0])
    from .analysis import EnsembleStats

    write_ensemble_csv(path, EnsembleStats(points))


def run_fig1_panel(
    out_dir: str,
    fig_id: str,
    base_str: str,
    manifest: dict,
    workers: int,
    words_per_base: int,
    n_letters: int,
) -> list[str]:
    base = Base.parse(base_str)
    l_values = cloud_l_values(base.q, n_letters)
    vals = sample_valuations(
        words_per_base, manifest["seed_val_bound"], manifest["seedpick_rng_seed"]
    )
    jobs = [(base_str, v, n_letters, l_values) for v in vals]
    results = _map_jobs(jobs, _cloud_word_job, workers, f"{fig_id} {base_str} cloud")

    cloud_rows = []
    for seed_val, entries in results:
        for l, entry in zip(l_values, entries):
            cloud_rows.append((base_str, str(seed_val), l, entry, n_letters))
    slug = base_str.replace("/", "-")
    cloud_path = os.path.join(out_dir, f"{fig_id}_{slug}_cloud.csv")
    write_richness_csv(cloud_path, cloud_rows)

    baseline_jobs = [
        (base.q, l_values, n_letters, manifest["baseline_rng_seed"] + i)
        for i in range(manifest["baseline_words"])
    ]
    baseline = _map_jobs(baseline_jobs, _random_rt_job, workers, f"{fig_id} {base_str} baseline")
    band_path = os.path.join(out_dir, f"{fig_id}_{slug}_band.csv")
    _write_rt_band(band_path, l_values, baseline)
    return [cloud_path, band_path]


def run_fig1(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    files = []
    for base_str in manifest["bases"]:
        files += run_fig1_panel(
            out_dir,
            "fig1",
            base_str,
            manifest,
            workers,
            manifest["words_per_base"],
            manifest["n_letters"],
        )
    files.append(_sidecar(out_dir, manifest, overrides))
    return files


def _random_curve_job(args):
    q, l, grid, rng_seed = args
    curve = random_deviation_curve(q, l, grid, rng_seed)
    return [d for _, d in curve.samples]


def _band_grid(grid, q: int, l: int) -> list[int]:
    """Ensemble bands start at the information floor q**l + l - 1; below it
    the deviation statistic is degenerate and order statistics meaningless."""
    return [g for g in grid if g >= q**l + l - 1]


def _baseline_band(out_dir, name, q, l, grid, count, rng_seed, workers, label):
    xs = _band_grid(grid, q, l)
    jobs = [(q, l, xs, rng_seed + i) for i in range(count)]
    series = _map_jobs(jobs, _random_curve_job, workers, label)
    stats = ensemble_stats(xs, series)
    path = os.path.join(out_dir, name)
    write_ensemble_csv(path, stats)
    return path


def run_fig2(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    n = manifest["n_letters"]
    l = manifest["l"]
    grid = geometric_grid(l, n)
    subject = manifest["subject"]
    base = Base.parse(subject["base"])
    stream = MinWordStream.from_valuation(base, subject["seed_val"])
    curve = deviation_curve(stream, l, grid)
    rows = [(str(base), str(subject["seed_val"]), l, n_i, d) for n_i, d in curve.samples]
    subject_path = os.path.join(out_dir, "fig2_subject.csv")
    write_deviation_csv(subject_path, rows)
    band_path = _baseline_band(
        out_dir,
        "fig2_band.csv",
        base.q,
        l,
        grid,
        manifest["baseline_words"],
        manifest["baseline_rng_seed"],
        workers,
        "fig2 baseline",
    )
    return [subject_path, band_path, _sidecar(out_dir, manifest, overrides)]


def _dev_word_job(args):
    base_str, seed_val, l, grid = args
    base = Base.parse(base_str)
    stream = MinWordStream.from_valuation(base, seed_val)
    curve = deviation_curve(stream, l, grid)
    return seed_val, curve.samples


def _deviation_cloud_files(out_dir: str, manifest: dict, workers: int, prefix: str) -> list[str]:
    n = manifest["n_letters"]
    l = manifest["l"]
    grid = geometric_grid(l, n)
    base_str = manifest["base"]
    jobs = [(base_str, v, l, grid) for v in manifest["seed_vals"]]
    results = _map_jobs(jobs, _dev_word_job, workers, f"{prefix} cloud")
    rows = []
    for seed_val, samples in results:
        rows += [(base_str, str(seed_val), l, n_i, d) for n_i, d in samples]
    cloud_path = os.path.join(out_dir, f"{prefix}_cloud.csv")
    write_deviation_csv(cloud_path, rows)
    q = Base.parse(base_str).q
    band_path = _baseline_band(
        out_dir,
        f"{prefix}_band.csv",
        q,
        l,
        grid,
        manifest["baseline_words"],
        manifest["baseline_rng_seed"],
        workers,
        f"{prefix} baseline",
    )
    return [cloud_path, band_path]


def run_fig3(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    files = _deviation_cloud_files(out_dir, manifest, workers, "fig3")
    files.append(_sidecar(out_dir, manifest, overrides))
    return files


def run_fig4(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    files = []
    n = manifest["n_letters"]
    for base_str in manifest["bases"]:
        base = Base.parse(base_str)
        l = manifest["l_by_q"][base.q] if isinstance(manifest["l_by_q"], dict) else manifest["l_by_q"][str(base.q)]
        grid = geometric_grid(l, n)
        vals = sample_valuations(
            manifest["words_per_base"], manifest["seed_val_bound"], manifest["seedpick_rng_seed"]
        )
        xs = _band_grid(grid, base.q, l)
        jobs = [(base_str, v, l, xs) for v in vals]
        results = _map_jobs(jobs, _dev_word_job, workers, f"fig4 {base_str} subjects")
        series = [[d for _, d in samples] for _, samples in results]
        stats = ensemble_stats(xs, series)
        slug = base_str.replace("/", "-")
        subject_path = os.path.join(out_dir, f"fig4_{slug}_subject_band.csv")
        write_ensemble_csv(subject_path, stats)
        baseline_path = _baseline_band(
            out_dir,
            f"fig4_{slug}_baseline_band.csv",
            base.q,
            l,
            grid,
            manifest["baseline_words"],
            manifest["baseline_rng_seed"],
            workers,
            f"fig4 {base_str} baseline",
        )
        files += [subject_path, baseline_path]
    files.append(_sidecar(out_dir, manifest, overrides))
    return files


def run_fig5(out_dir: str, manifest: dict, overrides: dict, workers: int) -> list[str]:
    files = []
    n = manifest["n_letters"]

    # left: the 8/3 richness panel plus a ternary de Bruijn overlay
    fig1_manifest = repro_manifest("fig1")
    fig1_manifest.update(
        n_letters=n,
        words_per_base=manifest.get("words_per_base", fig1_manifest["words_per_base"]),
        baseline_words=manifest["baseline_words"],
        baseline_rng_seed=manifest["baseline_rng_seed"],
    )
    base_str = manifest["left"]["base"]
    cloud_path, band_path = run_fig1_panel(
        out_dir, "fig5_left", base_str, fig1_manifest, workers,
        fig1_manifest["words_per_base"], n,
    )
    os.replace(cloud_path, os.path.join(out_dir, "fig5_left_cloud.csv"))
    os.replace(band_path, os.path.join(out_dir, "fig5_left_band.csv"))
    files += [os.path.join(out_dir, "fig5_left_cloud.csv"), os.path.join(out_dir, "fig5_left_band.csv")]

    q = manifest["left"]["overlay"]["q"]
    l_values = cloud_l_values(Base.parse(base_str).q, n)
    letters = bytes(DeBruijnStream(q).take(n))
    rows = [
        (f"debruijn[q={q}]", "-", l, letters_richness_entry(letters, q, l), n)
        for l in l_values
    ]
    overlay_path = os.path.join(out_dir, "fig5_left_overlay.csv")
    write_richness_csv(overlay_path, rows)
    files.append(overlay_path)

    # right: the fig3 deviation panel plus the binary Champernowne curve
    fig3_manifest = repro_manifest("fig3")
    dev_n = manifest["deviation_n_letters"]
    fig3_manifest.update(
        n_letters=dev_n,
        baseline_words=manifest["baseline_words"],
        baseline_rng_seed=manifest["baseline_rng_seed"],
    )
    files += _deviation_cloud_files(out_dir, fig3_manifest, workers, "fig5_right")

    oq = manifest["right"]["overlay"]["q"]
    l = fig3_manifest["l"]
    grid = geometric_grid(l, dev_n)
    curve = deviation_curve(LetterBuffer(bytes(ChampernowneStream(oq).take(dev_n)), oq), l, grid)
    rows = [(f"champernowne[q={oq}]", "-", l, n_i, d) for n_i, d in curve.samples]
    overlay_path = os.path.join(out_dir, "fig5_right_overlay.csv")
    write_deviation_csv(overlay_path, rows)
    files.append(overlay_path)

    files.append(_sidecar(out_dir, manifest, overrides))
    return files


def run_repro(
    identifier: str,
    out_dir: str,
    *,
    workers: int = 1,
    n_letters: int | None = None,
    count: int | None = None,
    rng_seed: int | None = None,
) -> list[str]:
    """Run one repro manifest, returning the list of files written."""
    manifest = repro_manifest(identifier, rng_seed=rng_seed)
    overrides = {}
    if n_letters is not None:
        overrides["n_letters"] = n_letters
        for key in ("n_letters", "deviation_n_letters"):
            if key in manifest:
                manifest[key] = n_letters
    if count is not None:
        overrides["count"] = count
        for key in ("words_per_base", "baseline_words"):
            if key in manifest:
                manifest[key] = count
    if rng_seed is not None:
        overrides["rng_seed"] = rng_seed
    os.makedirs(out_dir, exist_ok=True)

    started = time.perf_counter()
    kind = manifest["kind"]
    if kind == "counting-table":
        files = run_table1(out_dir, manifest, overrides)
    elif kind == "richness-table":
        files = run_richness_table(out_dir, manifest, overrides, workers)
    elif kind == "richness-clouds":
        files = run_fig1(out_dir, manifest, overrides, workers)
    elif kind == "deviation-curve":
        files = run_fig2(out_dir, manifest, overrides, workers)
    elif kind == "deviation-cloud":
        files = run_fig3(out_dir, manifest, overrides, workers)
    elif kind == "deviation-ensembles":
        files = run_fig4(out_dir, manifest, overrides, workers)
    elif kind == "overlay-panels":
        files = run_fig5(out_dir, manifest, overrides, workers)
    else:  # pragma: no cover
        raise KeyError(f"manifest kind {kind!r} has no runner")
    _progress(f"[{identifier}] wrote {len(files)} files in {time.perf_counter() - started:.1f}s")
    return files
