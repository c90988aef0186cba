from setuptools import setup, find_packages


__version__ = '0.1.0'


with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()


setup(
    name='coopnc',
    version=__version__,
    packages=find_packages(exclude=["tests", "experiments"]),
    include_package_data=True,
    description='Network coded cooperation in two-source / two-destination ad hoc networks: '
                'rates, power allocation and Monte Carlo outage simulation',
    long_description=long_description,
    long_description_content_type='text/markdown',
    python_requires='>=3.9',
    install_requires=[
        "numpy",
        "pandas>=1.5",
        "matplotlib",
        "tqdm",
        "pyyaml",
    ],
    extras_require={
        "tests": ["pytest"],
    },
    entry_points={
        "console_scripts": ["coopnc=coopnc.cli:main"],
    },
)
