from setuptools import find_packages, setup

with open("requirements.txt") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="dwd",
    version="1.0.0",
    description="Double wiring diagram move graphs and minor positivity verification",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"dwd": ["proto/*.proto"]},
    install_requires=requirements,
    python_requires=">=3.10",
    entry_points={"console_scripts": ["dwd=dwd.cli:main"]},
)
