import setuptools

setuptools.setup(
    name="TrapSeeker",
    version="0.1.0",
    author="Greg M. Fleishman",
    author_email="greg.nli10me@gmail.com",
    description="Tools for finding traps of the baker's map",
    license="MIT",
    packages=setuptools.find_packages(exclude=['tests']),
    include_package_data=True,
    install_requires=[
        'numpy',
        'scipy',
        'psutil',
        'dask',
        'dask[bag]',
    ],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': ['trapseeker=TrapSeeker.cli:main'],
    },
)
