"""Inspect the 7 x 12 oriented filter bank: sizes, balance, spectral
peaks and the power-law scale weights derived from them."""

import numpy as np

from brightdyn.filterbank import FilterBank, convolve
from brightdyn.pooling import spectral_weights
from brightdyn.stimuli import GratingSpec, PixelGeometry, make_square_grating

bank = FilterBank(PixelGeometry(32))
weights = spectral_weights(bank.spectral_modes, 0.1)

print("scale  sigma_c(deg)  sigma_c(px)  side(px)  peak(cyc/deg)  weight  max|sum|")
for j in range(bank.n_scales):
    k = bank.kernel(j, 0)
    worst = max(abs(bank.kernel(j, i).sum()) for i in range(bank.n_orientations))
    print(f"{j:5d}  {bank.center_sigmas_deg[j]:12.4f}  {bank.center_sigmas_px[j]:11.2f}  "
          f"{k.shape[0]:8d}  {bank.spectral_modes[j]:13.4f}  {weights[j]:6.3f}  {worst:.1e}")

# closed form for the 1-D profile peak of a 1:2 centre/surround pair
closed = np.sqrt(np.log(2) / 3) / (np.pi * bank.center_sigmas_deg)
print("numeric / closed-form peak:", np.round(bank.spectral_modes / closed, 6))

# orientation tuning: a vertical grating drives the 0 deg filters hardest
img = make_square_grating(GratingSpec(24, 80, 20), 256, 256)
j = 2
energy = [np.abs(convolve(img, bank.kernel(j, i))[80:-80, 80:-80]).mean()
          for i in range(bank.n_orientations)]
print(f"scale {j} mean |response| to vertical stripes by orientation:")
for theta, e in zip(bank.orientations_deg, energy):
    print(f"  {theta:5.0f} deg  {e:8.3f}  " + "#" * int(40 * e / max(energy)))
