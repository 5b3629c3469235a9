from setuptools import setup, find_packages

setup(
    name="qc_distortion",
    version="0.1.0",
    description="Linear distortion, optimal rank-one directions and distortion-reducing laminates of 3x3 matrices",
    packages=find_packages(exclude=["tests", "tests.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",  # brentq root bracketing in the crossing oracle
        "strictyaml>=1.0.0",  # YAML run files
        "colorama>=0.4.6",  # Colored terminal reports
    ],
    extras_require={
        "dev": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": ["qcdistortion=qcdistortion.cli:main"],
    },
)
