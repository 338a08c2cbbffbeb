"""Static SVG rendering of the plot data. Needs the optional matplotlib extra."""

import io

import numpy as np

from ..exceptions import RendererUnavailable

HASH_SALT = "modalwatch"


def _pyplot():
    try:
        import matplotlib
    except ImportError:
        raise RendererUnavailable(
            "SVG rendering needs matplotlib, install modalwatch[plot]."
        )

    matplotlib.use("Agg")
    matplotlib.rcParams.update(
        {
            "font.family": "DejaVu Sans",
            "axes.unicode_minus": False,
            "svg.hashsalt": HASH_SALT,
        }
    )
    import matplotlib.pyplot as plt

    return plt


def render_svg(frames):
    """Draws one panel per channel: observed value, forecast mean, the 1%-99% band
    and the anomalous hours shaded from yellow (lowest score) to red (highest).

    Arguments:
        frames {dict} -- channel name to plot-data DataFrame with an 'hour' column.

    Returns:
        bytes -- the SVG document; identical input gives identical bytes.
    """
    plt = _pyplot()
    fig, axes = plt.subplots(
        len(frames), 1, figsize=(12, 2.4 * len(frames)), sharex=True, squeeze=False
    )
    for ax, (channel, frame) in zip(axes[:, 0], frames.items()):
        hours = frame["hour"].to_numpy()
        ax.fill_between(
            hours,
            frame["p01"].to_numpy(dtype=float),
            frame["p99"].to_numpy(dtype=float),
            color="0.85",
            label="1%-99% band",
        )
        ax.plot(hours, frame["mean"].to_numpy(dtype=float), "--", color="0.4", lw=0.8, label="mean")
        ax.plot(
            hours, frame["observed"].to_numpy(dtype=float), color="black", lw=0.8, label="observed"
        )

        shade = frame["intensity"].to_numpy(dtype=float)
        marked = ~np.isnan(shade)
        if marked.any():
            ax.scatter(
                hours[marked],
                frame["observed"].to_numpy(dtype=float)[marked],
                c=shade[marked],
                cmap="YlOrRd",
                vmin=0.0,
                vmax=1.0,
                s=12,
                zorder=3,
                label="anomalous",
            )
        ax.set_ylabel(f"{channel} [Hz]")
        ax.grid(True, alpha=0.3)
    axes[0, 0].legend(loc="upper right", fontsize=7)
    axes[-1, 0].set_xlabel("hours since 1970-01-01T00Z")

    buffer = io.BytesIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buffer.getvalue()
