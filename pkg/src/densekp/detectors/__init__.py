"""Classical keypoint and edge detectors with normal/low threshold profiles."""

from .corners import detect_harris, detect_shi_tomasi, harris_response, min_eigenvalue_response
from .dog import build_dog_pyramid, detect_dog
from .edges import edges_canny, edges_sobel
from .fast import detect_agast, detect_fast, segment_test_maps
from .nms import suppress_candidates
from .profiles import LOW, NORMAL, PROFILES, DetectorProfile, get_profile
from .pyramid import brisk_layer_factors, detect_brisk, detect_orb

# the 7 keypoint detectors of the fusion set, by CLI name
KEYPOINT_DETECTORS = {
    "sift-dog": detect_dog,
    "orb": detect_orb,
    "brisk": detect_brisk,
    "fast": detect_fast,
    "agast": detect_agast,
    "harris": detect_harris,
    "shi-tomasi": detect_shi_tomasi,
}

# the 2 edge detectors of the fusion set
EDGE_DETECTORS = {
    "canny": edges_canny,
    "sobel": edges_sobel,
}


def run_keypoint_detector(name: str, gray, profile: DetectorProfile):
    try:
        fn = KEYPOINT_DETECTORS[name]
    except KeyError:
        raise ValueError(
            f"unknown detector {name!r}; expected one of {sorted(KEYPOINT_DETECTORS)}"
        ) from None
    return fn(gray, profile)


__all__ = [
    "DetectorProfile",
    "EDGE_DETECTORS",
    "KEYPOINT_DETECTORS",
    "LOW",
    "NORMAL",
    "PROFILES",
    "brisk_layer_factors",
    "build_dog_pyramid",
    "detect_agast",
    "detect_brisk",
    "detect_dog",
    "detect_fast",
    "detect_harris",
    "detect_orb",
    "detect_shi_tomasi",
    "edges_canny",
    "edges_sobel",
    "get_profile",
    "harris_response",
    "min_eigenvalue_response",
    "run_keypoint_detector",
    "segment_test_maps",
    "suppress_candidates",
]
