"""Render the ten built-in displays to 16-bit PGM and print what sits
under the observation points."""

import sys
from pathlib import Path

from brightdyn.experiments import STIMULUS_IDS, DisplayConfig, make_stimulus
from brightdyn.pgm import write_pgm

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out/stimuli")
out.mkdir(parents=True, exist_ok=True)
display = DisplayConfig()
(mx, my), (ix, iy) = display.mid_point, display.interface_point(16)

for sid in STIMULUS_IDS:
    img = make_stimulus(sid, display)
    write_pgm(out / f"{sid}.pgm", img)
    # the target stripe or test patch lies under the centre column
    left, here, right = img[my, mx - 40], img[my, mx], img[my, mx + 40]
    print(f"{sid:16s} mid ({mx},{my}) = {here:5.1f}  neighbours {left:5.1f} / {right:5.1f}"
          f"  interface ({ix},{iy}) = {img[iy, ix]:5.1f}")
print(f"wrote {len(STIMULUS_IDS)} PGM files to {out}")
