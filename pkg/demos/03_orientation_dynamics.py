"""Early and late orientation impulse responses and what they do to a
single-peaked orientation profile."""

import numpy as np

from brightdyn.orientation import (FeedbackCoefficients, ImpulseParams, make_impulse_response,
                                   modulate, orientation_grid, wrapped_lobe)

theta = orientation_grid()
profile = wrapped_lobe(0.0, 20.0)
coeff = FeedbackCoefficients.uniform()

print("theta    h(T1)     h(T2)   input   T1 out   T2 out")
h1 = make_impulse_response(ImpulseParams.t1())
h2 = make_impulse_response(ImpulseParams.t2())
o1, o2 = modulate(profile, h1, coeff, 0), modulate(profile, h2, coeff, 0)
for row in zip(theta, h1.samples, h2.samples, profile, o1, o2):
    print("{:5.0f}  {:8.4f}  {:8.4f}  {:6.3f}  {:7.3f}  {:7.3f}".format(*row))

print(f"sum h: T1 {h1.samples.sum():.1e}, T2 {h2.samples.sum():.1e}")
print(f"T1 sharpens: peak {profile[0]:.3f} -> {o1[0]:.3f}, orthogonal {profile[6]:.3f} -> {o1[6]:.3f}")
print(f"T2 shifts weight to 90 deg: peak {profile[0]:.3f} -> {o2[0]:.3f}, "
      f"orthogonal {profile[6]:.3f} -> {o2[6]:.3f}")

# how much feedback gain flips the T2 peak to the orthogonal orientation
for alpha in (1, 2, 4, 8, 16):
    out = modulate(profile, h2, FeedbackCoefficients.uniform(1.0, alpha, 1), 0)
    print(f"alpha {alpha:2d}: T2 argmax |O| at {theta[np.argmax(np.abs(out))]:.0f} deg")
