"""densekp: dense keypoint detection via multi-detector mask fusion.

Classical corner/edge detectors build binary supervision masks, a miniature
encoder-decoder learns to predict them, and a matching harness evaluates
density, repeatability, foreground ratio, and correct matches under
ground-truth homographies.
"""

__version__ = "0.1.0"
